"""Piecewise-constant H^1(R_+^d) atoms.

An atom lives on a ball B with center in R_+^d. Its profile is a grid of
equal cells inside B, each carrying a rational level in [-1, 1]; the value on
a cell is level / |B|. Because the cells have equal measure, the mean is zero
exactly when the levels sum to zero, which is checked in rational arithmetic.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConstructionError, DimensionError
from ..numerics import parallel_map
from ..quadrature.coefficients import CellProfile, TargetFunction

logger = logging.getLogger(__name__)

DISK_RESOLUTION = 32
MAX_CELLS_1D = 8


def _balanced_levels(signs: Sequence[int]) -> List[Fraction]:
    """Levels +p on the positive cells and -m on the negative ones with p n+ = m n- and max(p, m) = 1."""
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = sum(1 for s in signs if s < 0)
    if n_plus == 0 or n_minus == 0:
        raise ConstructionError("an atom needs cells of both signs")
    if n_plus >= n_minus:
        p, m = Fraction(n_minus, n_plus), Fraction(1)
    else:
        p, m = Fraction(1), Fraction(n_plus, n_minus)
    return [p if s > 0 else (-m if s < 0 else Fraction(0)) for s in signs]


@dataclass(frozen=True)
class Atom:
    d: int
    center: Tuple[float, ...]
    radius: float
    edges: Tuple[Tuple[float, ...], ...]
    levels: Tuple[Fraction, ...]
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.d not in (1, 2):
            raise DimensionError(f"atoms are built for d in {{1, 2}}, got d={self.d}")
        if len(self.center) != self.d or len(self.edges) != self.d:
            raise DimensionError("center and edges must have one entry per coordinate")
        if self.levels and max(abs(v) for v in self.levels) > 1:
            raise ConstructionError("cell levels must lie in [-1, 1]")

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(e) - 1 for e in self.edges)

    @property
    def ball_measure(self) -> float:
        """|B|: 2 rho for d=1, pi rho^2 for d=2."""
        return 2.0 * self.radius if self.d == 1 else math.pi * self.radius**2

    @property
    def level_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.levels]).reshape(self.shape)

    @property
    def values(self) -> np.ndarray:
        return self.level_array / self.ball_measure

    @property
    def edge_arrays(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.asarray(e, dtype=float) for e in self.edges)

    @property
    def cell_measure(self) -> float:
        return math.prod(e[1] - e[0] for e in self.edges)

    def profile(self) -> CellProfile:
        return CellProfile(edges=self.edge_arrays, values=self.values)

    def mean_is_zero(self) -> bool:
        return sum(self.levels, Fraction(0)) == 0

    def sup_norm(self) -> float:
        return float(max(abs(v) for v in self.levels)) / self.ball_measure

    def l1_norm(self) -> float:
        return float(sum(abs(v) for v in self.levels)) * self.cell_measure / self.ball_measure

    def l2_norm(self) -> float:
        return math.sqrt(float(sum(v * v for v in self.levels)) * self.cell_measure) / self.ball_measure

    def support_in_ball(self) -> bool:
        """Every nonzero cell lies in the closed ball and in R_+^d."""
        grids = [np.asarray(e) for e in self.edges]
        if any(g[0] < 0.0 for g in grids):
            return False
        levels = self.level_array
        for index in zip(*np.nonzero(levels)):
            corners = [(grids[i][j], grids[i][j + 1]) for i, j in enumerate(index)]
            for corner in np.array(np.meshgrid(*corners)).reshape(self.d, -1).T:
                if math.dist(corner, self.center) > self.radius * (1.0 + 1e-12):
                    return False
        return True

    def __call__(self, *x: np.ndarray) -> np.ndarray:
        return self.profile()(*x)

    def to_target(self) -> TargetFunction:
        profile = self.profile()
        return TargetFunction(
            func=profile,
            d=self.d,
            upper=tuple(float(e[-1]) for e in self.edges),
            l2_norm=self.l2_norm(),
            cells=profile,
            label=f"atom(d={self.d}, |B|={self.ball_measure:.3g}, seed={self.seed})",
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "center": list(self.center),
            "radius": self.radius,
            "edges": [list(e) for e in self.edges],
            "levels": [str(v) for v in self.levels],
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Atom":
        return cls(
            d=int(payload["d"]),
            center=tuple(float(c) for c in payload["center"]),
            radius=float(payload["radius"]),
            edges=tuple(tuple(float(v) for v in e) for e in payload["edges"]),
            levels=tuple(Fraction(v) for v in payload["levels"]),
            seed=payload.get("seed"),
        )


def _interval_atom(center: float, radius: float, seed: Optional[int]) -> Atom:
    lo, hi = max(0.0, center - radius), center + radius
    if seed is None:
        cells, signs = 2, [1, -1]
    else:
        rng = np.random.default_rng(seed)
        cells = int(rng.integers(2, MAX_CELLS_1D + 1))
        signs = [1, -1] + [int(s) for s in rng.choice([-1, 1], size=cells - 2)]
        signs = [int(s) for s in rng.permutation(signs)]
    edges = tuple(float(v) for v in np.linspace(lo, hi, cells + 1))
    if lo == center - radius and cells == 2:
        edges = (lo, center, hi)
    return Atom(
        d=1,
        center=(center,),
        radius=radius,
        edges=(edges,),
        levels=tuple(_balanced_levels(signs)),
        seed=seed,
    )


def _disk_atom(center: Tuple[float, float], radius: float, seed: Optional[int]) -> Atom:
    axes = [np.linspace(max(0.0, c - radius), c + radius, DISK_RESOLUTION + 1) for c in center]
    x0, x1 = axes[0][:-1], axes[0][1:]
    y0, y1 = axes[1][:-1], axes[1][1:]
    # a cell is kept when its farthest corner lies inside the disk
    dx = np.maximum(np.abs(x0 - center[0]), np.abs(x1 - center[0]))
    dy = np.maximum(np.abs(y0 - center[1]), np.abs(y1 - center[1]))
    inside = dx[:, None] ** 2 + dy[None, :] ** 2 <= radius * radius
    if inside.sum() < 2:
        raise ConstructionError(f"disk of radius {radius} at {center} contains fewer than two grid cells")
    if seed is None:
        theta = 0.0
    else:
        theta = float(np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi))
    mid_x = 0.5 * (x0 + x1) - center[0]
    mid_y = 0.5 * (y0 + y1) - center[1]
    proj = math.cos(theta) * mid_x[:, None] + math.sin(theta) * mid_y[None, :]
    signs = np.where(inside, np.where(proj < 0.0, 1, -1), 0)
    if not (np.any(signs > 0) and np.any(signs < 0)):
        left = np.broadcast_to(mid_x[:, None] < 0.0, inside.shape)
        signs = np.where(inside, np.where(left, 1, -1), 0)
    levels = _balanced_levels(signs.ravel().tolist())
    return Atom(
        d=2,
        center=(float(center[0]), float(center[1])),
        radius=radius,
        edges=tuple(tuple(float(v) for v in a) for a in axes),
        levels=tuple(levels),
        seed=seed,
    )


def make_atom(d: int, center: float | Sequence[float], radius: float, seed: Optional[int] = None) -> Atom:
    """Atom on the ball B(center, radius) intersected with R_+^d.

    Without a seed the canonical two-group profile is returned: two halves for
    d=1, left and right halves of the inscribed cells for d=2. A seed draws the
    number of cells and the signs (d=1) or the splitting direction (d=2).
    """
    if isinstance(center, (int, float)):
        center = (float(center),)
    center = tuple(float(c) for c in center)
    if len(center) != d:
        raise DimensionError(f"center has {len(center)} coordinates for d={d}")
    if not radius > 0.0:
        raise ConstructionError(f"radius must be positive, got {radius}")
    if any(not c > 0.0 for c in center):
        raise ConstructionError(f"the ball center must lie in the open positive orthant, got {center}")
    if d == 1:
        atom = _interval_atom(center[0], float(radius), seed)
    elif d == 2:
        atom = _disk_atom((center[0], center[1]), float(radius), seed)
    else:
        raise DimensionError(f"atoms are built for d in {{1, 2}}, got d={d}")
    logger.debug("Built atom d=%d center=%s radius=%g with %d cells", d, center, radius, len(atom.levels))
    return atom


def radius_for_measure(d: int, measure: float) -> float:
    return measure / 2.0 if d == 1 else math.sqrt(measure / math.pi)


def atom_family(
    count: int = 20,
    seed: int = 0,
    dims: Sequence[int] = (1, 2),
    measure_range: Tuple[float, float] = (1e-4, 10.0),
    threads: Optional[int] = None,
) -> List[Atom]:
    """Seeded atoms with |B| log-spaced over measure_range, split evenly over dims."""
    rng = np.random.default_rng(seed)
    per_dim = [count // len(dims) + (1 if i < count % len(dims) else 0) for i in range(len(dims))]
    params = []
    for d, n in zip(dims, per_dim):
        measures = np.geomspace(measure_range[0], measure_range[1], n) if n > 1 else np.array([measure_range[0]])
        for measure in measures:
            center = tuple(float(c) for c in rng.uniform(0.2, 3.0, size=d))
            params.append((d, center, radius_for_measure(d, float(measure)), int(rng.integers(0, 2**31 - 1))))
    return parallel_map(lambda args: make_atom(*args), params, threads=threads)


__all__ = ["Atom", "atom_family", "make_atom", "radius_for_measure"]
