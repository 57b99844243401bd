"""Filling a cubical cocycle by a cochain of linearly controlled norm.

Each sweep picks the lightest section ``x_j = t`` along one axis, extrudes
the cocycle from that section along the axis, and subtracts the resulting
coboundary. Afterwards the residual vanishes on every face with axis ``j``
free and is a translate of its own section elsewhere. Sweeping ``d'-k+1``
distinct axes kills every k-face.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Chain, Cochain, coboundary, norm, prism_eval
from .cubical import Box, CubeFace
from .errors import CocycleError, DimensionError, InvariantError


@dataclass
class Sweep:
    axis: int
    level: int
    alpha_norm: int
    beta_norm: int
    residual_norm: int

    def to_dict(self) -> dict:
        return {"axis": self.axis, "level": self.level, "alpha_norm": self.alpha_norm,
                "beta_norm": self.beta_norm, "residual_norm": self.residual_norm}


@dataclass
class FillResult:
    beta: Cochain
    sweeps: list = field(default_factory=list)
    bound: int = 0
    alpha_norm: int = 0

    @property
    def ratio(self) -> float:
        return norm(self.beta) / self.alpha_norm if self.alpha_norm else 0.0


def check_cocycle(alpha: Chain, region: Box):
    if coboundary(alpha, region):
        raise CocycleError("input cochain is not a cocycle on its region")


def choose_section(alpha: Chain, axis: int, region: Box, levels=None) -> int:
    """Smallest level whose hyperplane carries the least norm of ``alpha``."""
    lo, hi = region.bounds[axis]
    tally = dict.fromkeys(range(lo, hi + 1) if levels is None else levels, 0)
    for c, v in alpha.items():
        if axis not in c.free and c.anchor[axis] in tally:
            tally[c.anchor[axis]] += abs(v)
    return min(tally, key=lambda t: (tally[t], t))


def sweep(alpha: Chain, axis: int, region: Box, check: bool = True) -> tuple[Cochain, Cochain, int]:
    """One extrusion step along ``axis``: returns (beta_i, alpha_next, level)."""
    if check:
        check_cocycle(alpha, region)
    t = choose_section(alpha, axis, region)
    lo, hi = region.bounds[axis]
    # only faces whose prism to level t meets the support can get a nonzero value
    targets = set()
    for g in alpha:
        if axis in g.free:
            rest = tuple(a for a in g.free if a != axis)
            for level in range(lo, hi + 1):
                anchor = list(g.anchor)
                anchor[axis] = level
                targets.add(CubeFace(tuple(anchor), rest))
    beta = Cochain({tau: prism_eval(alpha, tau, axis, t) for tau in targets})
    alpha_next = Cochain(alpha - coboundary(beta, region))
    return beta, alpha_next, t


def fill(alpha: Chain, region: Box, check: bool = True) -> FillResult:
    """Cochain beta on ``region`` with coboundary ``alpha``.

    ``norm(beta) <= (d' - k + 1) * side * norm(alpha)``, d' the dimension of
    the box and side its longest edge.
    """
    k = alpha.dim
    if k is None:
        return FillResult(Cochain(), [], 0, 0)
    if k == 0:
        raise DimensionError("0-cocycles are constant on a connected box and cannot be filled")
    if check:
        check_cocycle(alpha, region)
    axes = region.free_axes[: region.dim - k + 1]
    total = norm(alpha)
    result = FillResult(Cochain(), [], (region.dim - k + 1) * region.side * total, total)
    current = Cochain(alpha)
    beta_sum = Cochain()
    for axis in axes:
        if not current:
            break
        before = norm(current)
        beta_i, current, t = sweep(current, axis, region, check=False)
        beta_sum = beta_sum + beta_i
        result.sweeps.append(Sweep(axis, t, before, norm(beta_i), norm(current)))
    if current:
        raise InvariantError("residual cocycle did not vanish after all sweeps")
    result.beta = beta_sum
    return result


def verify_fill(alpha: Chain, region: Box, result: FillResult) -> bool:
    return (coboundary(result.beta, region) == alpha
            and norm(result.beta) <= result.bound
            and len(result.sweeps) <= max(region.dim - (alpha.dim or 0) + 1, 0))
