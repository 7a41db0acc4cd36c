"""Numerical exploration: trajectories, phase portraits, parameter sweeps.

The integrator is the classical fourth-order one-step scheme with a fixed
step, chosen so the conservation drift of the first integral x*f(y) is a
clean O(h^4) quantity.  Trajectories that leave the 1e12 ball are truncated
and flagged rather than raised: polynomial fields blow up in finite time
off their invariant sets and portraits still want the partial data.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .contact import Field3
from .jets import DEFAULT_ORDER
from .plane import Equilibrium, EquilibriumType, FieldKind, PlaneField, equilibria
from .plane import unfolding_q, unfolding_t

ESCAPE_NORM = 1e12


@dataclass(frozen=True)
class Trajectory:
    """Uniform-step states; drift is max |x f(y) - x0 f(y0)| when the field
    carries a germ, None otherwise; escaped marks truncation at the guard."""

    times: np.ndarray
    states: np.ndarray
    h: float
    drift: float | None
    escaped: bool

    def __len__(self) -> int:
        return len(self.times)

    def to_csv(self) -> str:
        dim = self.states.shape[1]
        header = "t,x,y" if dim == 2 else "t,x,y,z"
        lines = [header]
        for t, s in zip(self.times, self.states):
            lines.append(",".join([repr(float(t))] + [repr(float(v)) for v in s]))
        return "\n".join(lines) + "\n"


def _compiled_components(fld) -> tuple:
    if isinstance(fld, PlaneField):
        return (fld.xx.compiled(), fld.xy.compiled())
    if isinstance(fld, Field3):
        return (fld.xx.compiled(), fld.xy.compiled(), fld.xz.compiled())
    raise TypeError("integrate takes a PlaneField or a Field3")


def _first_integral(fld):
    """x*f(y) for germ-backed plane fields and their lifts; None otherwise."""
    germ = None
    if isinstance(fld, PlaneField) and fld.kind is FieldKind.LIOUVILLE:
        germ = fld.germ
    elif isinstance(fld, Field3):
        try:
            from .contact import project_to_plane
            plane = project_to_plane(fld)
            if plane.kind is FieldKind.LIOUVILLE:
                germ = plane.germ
        except Exception:
            germ = None
    if germ is None:
        return None
    coeffs = [float(c) for c in germ.coeffs]

    def invariant(state) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * state[1] + c
        return state[0] * acc

    return invariant


def integrate(fld, x0, T: float, h: float, backward: bool = False) -> Trajectory:
    """Classical fourth-order fixed-step integration from x0 for time T.

    ``backward`` integrates the time-reversed flow (equivalently the negated
    field forward).  Preconditions: T > 0, h > 0.
    """
    if h <= 0 or T <= 0:
        raise ValueError("integration needs positive T and h")
    comps = _compiled_components(fld)
    dim = len(comps)
    if len(x0) != dim:
        raise ValueError(f"initial state needs {dim} components")
    sign = -1.0 if backward else 1.0

    def rhs(state):
        return [sign * c(state) for c in comps]

    invariant = _first_integral(fld)
    state = [float(v) for v in x0]
    h0 = invariant(state) if invariant else None
    steps = int(round(T / h))
    times = [0.0]
    states = [list(state)]
    drift = 0.0 if invariant else None
    escaped = False
    for n in range(1, steps + 1):
        k1 = rhs(state)
        s2 = [state[i] + 0.5 * h * k1[i] for i in range(dim)]
        k2 = rhs(s2)
        s3 = [state[i] + 0.5 * h * k2[i] for i in range(dim)]
        k3 = rhs(s3)
        s4 = [state[i] + h * k3[i] for i in range(dim)]
        k4 = rhs(s4)
        state = [state[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
                 for i in range(dim)]
        if sum(v * v for v in state) > ESCAPE_NORM**2:
            escaped = True
            break
        times.append(n * h)
        states.append(list(state))
        if invariant:
            drift = max(drift, abs(invariant(state) - h0))
    return Trajectory(np.array(times), np.array(states), h, drift, escaped)


# ---------------------------------------------------------------------------
# Phase portraits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PortraitData:
    window: tuple[tuple[float, float], tuple[float, float]]
    trajectories: tuple[Trajectory, ...]
    equilibria: tuple[Equilibrium, ...]
    kind: str

    def to_csv(self) -> str:
        blocks = []
        for traj in self.trajectories:
            blocks.append(traj.to_csv())
        return "\n".join(blocks)


def phase_portrait(fld: PlaneField, window=((-2.0, 2.0), (-2.0, 2.0)),
                   seeds=(8, 8), T: float = 5.0, h: float = 0.01) -> PortraitData:
    """Trajectories from a seed grid in both time directions, plus the
    equilibrium annotations for germ-backed fields.  Deterministic."""
    (x0, x1), (y0, y1) = window
    nx, ny = seeds
    points = []
    for i in range(nx):
        for j in range(ny):
            px = x0 + (x1 - x0) * (i + 0.5) / nx if nx else 0.0
            py = y0 + (y1 - y0) * (j + 0.5) / ny if ny else 0.0
            points.append((px, py))
    trajectories = []
    for p in points:
        trajectories.append(integrate(fld, p, T, h))
        trajectories.append(integrate(fld, p, T, h, backward=True))
    eqs: tuple[Equilibrium, ...] = ()
    if fld.kind is FieldKind.LIOUVILLE and fld.germ is not None and not fld.germ.is_zero:
        eqs = tuple(e for e in equilibria(fld, (y0, y1)))
    return PortraitData(window, tuple(trajectories), eqs, fld.kind.value)


def portrait_svg(portrait: PortraitData, width: int = 480, height: int = 480) -> str:
    """Standalone SVG: trajectories as thin polylines, saddles as filled
    markers, degenerate lines dotted across the window."""
    (x0, x1), (y0, y1) = portrait.window

    def to_svg(px, py):
        sx = (px - x0) / (x1 - x0) * width
        sy = (y1 - py) / (y1 - y0) * height
        return f"{sx:.3f},{sy:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for traj in portrait.trajectories:
        pts = " ".join(to_svg(s[0], s[1]) for s in traj.states)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f3b70" '
                     f'stroke-width="0.7"/>')
    for eq in portrait.equilibria:
        y = float(eq.y)
        if eq.type is EquilibriumType.DEGENERATE_LINE:
            a = to_svg(x0, y)
            b = to_svg(x1, y)
            parts.append(f'<line x1="{a.split(",")[0]}" y1="{a.split(",")[1]}" '
                         f'x2="{b.split(",")[0]}" y2="{b.split(",")[1]}" '
                         f'stroke="black" stroke-width="1.2" stroke-dasharray="2,5"/>')
        else:
            cx, cy = to_svg(0.0, y).split(",")
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepEntry:
    params: tuple
    equilibria: tuple[Equilibrium, ...]

    def signature(self) -> tuple:
        return tuple(e.type.value for e in self.equilibria)

    def to_json(self) -> dict:
        return {
            "params": [_param_json(p) for p in self.params],
            "count": len(self.equilibria),
            "types": list(self.signature()),
            "equilibria": [e.to_json() for e in self.equilibria],
        }


@dataclass(frozen=True)
class SweepResult:
    family: str
    entries: tuple[SweepEntry, ...]
    transitions: tuple[int, ...]
    bifurcation_params: tuple = dataclass_field(default=())

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "entries": [e.to_json() for e in self.entries],
            "transitions": list(self.transitions),
            "bifurcations": [[_param_json(p) for p in params]
                             for params in self.bifurcation_params],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _param_json(p):
    return str(p) if isinstance(p, Fraction) else float(p)


def _family_field(family: str, params: tuple, order: int) -> PlaneField:
    if family.upper() == "Q":
        return unfolding_q(params[0], order)
    if family.upper() == "T":
        return unfolding_t(params[0], params[1], order)
    raise ValueError(f"unknown family {family!r}: use Q or T")


def parameter_sweep(family: str, grid, y_interval=(-4.0, 4.0),
                    order: int = DEFAULT_ORDER, workers: int = 1) -> SweepResult:
    """Equilibrium structure across a parameter grid.

    ``grid`` is a sequence of parameter tuples (bare numbers are accepted for
    the one-parameter family); adjacency is consecutive order in the list.
    Indices where the equilibrium signature changes between neighbors are
    recorded as transitions; a point whose signature differs from both of
    its neighbors is flagged as a bifurcation parameter.
    """
    points = [tuple(p) if isinstance(p, (tuple, list)) else (p,) for p in grid]
    if not points:
        raise ValueError("parameter grid must be non-empty")
    points = [tuple(Fraction(str(v)) if not isinstance(v, Fraction) else v
                    for v in p) for p in points]

    def analyze(params: tuple) -> SweepEntry:
        fld = _family_field(family, params, order)
        return SweepEntry(params, tuple(equilibria(fld, y_interval)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = tuple(pool.map(analyze, points))
    else:
        entries = tuple(analyze(p) for p in points)

    signatures = [e.signature() for e in entries]
    transitions = tuple(i for i in range(len(entries) - 1)
                        if signatures[i] != signatures[i + 1])
    flagged = tuple(entries[i].params for i in range(1, len(entries) - 1)
                    if signatures[i] != signatures[i - 1]
                    and signatures[i] != signatures[i + 1])
    return SweepResult(family.upper(), entries, transitions, flagged)
