"""Balancing descent over the flag of big faces.

At level k every k-face sigma of the big face F_k carries a simplicial
(k+1)-chain B(sigma), and A(sigma) = L(sigma) + boundary(B(sigma)). The
state is balanced when chi_C(A(boundary tau)) = 0 for every (k+1)-face tau
of F_k and every (k+1)-color tuple C. One descent step builds B on the
(k-1)-faces of F_{k-1} color set by color set:

    xi_D(tau)  = chi_D(A(tau))                     cocycle on F_k
    eta        = translate(fill(xi_D | Q')) - pushforward(xi_D between Q' and F_{k-1})
    B_D(sigma) = D-colored k-simplices with chi_D(B_D(sigma)) = -eta(sigma)
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    Chain,
    Cochain,
    boundary,
    coboundary,
    direct_image,
    norm,
    on_hyperplane,
    restrict,
    subdivide_L,
    translate,
)
from .coloring import Coloring, color_set_sign, group_by_color_set, require_valid, SIMPLICIAL
from .cubical import Box, CubeFace, GridSpec, boundary_cube, faces_of
from .errors import DimensionError, InvariantError, RealizationError
from .filling import FillResult, choose_section, fill

# chi_D(B_D(sigma)) = REALIZATION_SIGN * eta(sigma) makes chi_D(A(tau) + B(boundary tau)) vanish
REALIZATION_SIGN = -1


@dataclass
class BalanceState:
    spec: GridSpec
    coloring: Coloring
    level: int
    B: dict = field(default_factory=dict)
    usage: Counter = field(default_factory=Counter)
    supports_by_D: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    _A: Optional[dict] = field(default=None, repr=False, compare=False)

    @property
    def region(self) -> Box:
        return self.spec.big_face(self.level)

    def faces(self, k: int) -> list[CubeFace]:
        return faces_of(self.region, k)


@dataclass
class EtaBuild:
    D: tuple
    M: int
    section_level: int
    beta: Cochain
    xi_prime: Cochain
    eta: Cochain
    fill: FillResult
    bound: int

    def to_dict(self) -> dict:
        return {"D": list(self.D), "M": self.M, "section_level": self.section_level,
                "sweeps": [s.to_dict() for s in self.fill.sweeps],
                "eta_norm": norm(self.eta), "eta_bound": self.bound}


def init(spec: GridSpec, coloring: Coloring, mode: str = SIMPLICIAL) -> BalanceState:
    require_valid(spec, coloring, mode)
    return BalanceState(spec, coloring, spec.m)


def A_chain(state: BalanceState, sigma: CubeFace) -> Chain:
    if sigma.dim != state.level or not state.region.contains_face(sigma):
        raise DimensionError(f"{sigma} is not a {state.level}-face of level {state.level}")
    out = subdivide_L(Chain({sigma: 1}))
    b = state.B.get(sigma)
    if b:
        out = out + boundary(b)
    return out


def all_A(state: BalanceState) -> dict:
    if state._A is None:
        state._A = {s: A_chain(state, s) for s in state.faces(state.level)}
    return state._A


def A_of_chain(state: BalanceState, c: dict) -> Chain:
    A = all_A(state)
    acc: dict = defaultdict(int)
    for face, v in c.items():
        for s, w in A[face].items():
            acc[s] += v * w
    return Chain(acc)


def xi_all(state: BalanceState) -> dict:
    """xi_D for every sorted color set D that meets some A(tau)."""
    out: dict = defaultdict(dict)
    for tau, a in all_A(state).items():
        for D, v in group_by_color_set(a, state.coloring).items():
            if v:
                out[D][tau] = v
    return {D: Cochain(vals) for D, vals in sorted(out.items())}


def xi(state: BalanceState, D) -> Cochain:
    D = tuple(D)
    if len(D) != state.level + 1:
        raise DimensionError(f"|D| must be {state.level + 1}")
    if len(set(D)) != len(D):
        return Cochain()
    key, sign = color_set_sign(D)
    return sign * xi_all(state).get(key, Cochain())


def candidate_pools(state: BalanceState) -> dict:
    """D-colored k-simplices found in the supports of the A(tau), oriented so chi_D = +1."""
    pools: dict = defaultdict(dict)
    for a in all_A(state).values():
        for s in a:
            cols = state.coloring.colors_of(s)
            if len(set(cols)) == len(cols):
                D, sign = color_set_sign(cols)
                pools[D][s] = sign
    return {D: sorted(p.items()) for D, p in sorted(pools.items())}


def build_eta(state: BalanceState, D, xi_D: Optional[Cochain] = None) -> EtaBuild:
    k = state.level
    if k < 1:
        raise DimensionError("no descent below level 0")
    spec = state.spec
    F = state.region
    target = spec.big_face(k - 1)
    axis = spec.flag_axis(k)
    if xi_D is None:
        xi_D = xi(state, D)
    M = norm(xi_D)
    t = choose_section(xi_D, axis, F, levels=range(1, spec.n + 1))
    section = F.pin(axis, t)
    filled = fill(on_hyperplane(xi_D, axis, t), section, check=False)
    beta = translate(filled.beta, axis, 0)
    xi_prime = Cochain({g: v for g, v in xi_D.items() if axis in g.free and g.anchor[axis] < t})
    eta = Cochain(beta - direct_image(xi_prime, axis, 0))
    if coboundary(eta, target) != restrict(xi_D, target):
        raise InvariantError(f"coboundary of eta differs from xi_D on F_{k - 1} for D={D}")
    c_fill = section.dim - k + 1
    return EtaBuild(tuple(D), M, t, beta, xi_prime, eta, filled, (c_fill + 1) * M)


def realize(eta: Cochain, pool: list, sign: int = REALIZATION_SIGN) -> tuple[dict, Counter]:
    """Spread |eta| units over ``pool`` round-robin; returns (B_D, usage)."""
    if eta and not pool:
        raise RealizationError("eta is nonzero but no candidate simplex carries its colors")
    out: dict = {}
    used: Counter = Counter()
    cursor = 0
    for sigma, value in eta.items():
        target = sign * value
        unit = 1 if target > 0 else -1
        acc: dict = defaultdict(int)
        for _ in range(abs(target)):
            s, orient = pool[cursor % len(pool)]
            cursor += 1
            acc[s] += unit * orient
            used[s] += 1
        out[sigma] = Chain(acc)
    return out, used


def _merge(into: dict, part: dict):
    for sigma, c in part.items():
        into[sigma] = into[sigma] + c if sigma in into else c


def eq4_residuals(old: BalanceState, new_B: dict) -> dict:
    """chi_D(A(tau) + B(boundary tau)) per k-face tau of F_{k-1}, nonzero entries only."""
    coloring = old.coloring
    bad = {}
    for tau in faces_of(old.spec.big_face(old.level - 1), old.level):
        acc = defaultdict(int)
        for s, v in all_A(old)[tau].items():
            acc[s] += v
        for sigma, c in boundary_cube(tau).items():
            for s, v in new_B.get(sigma, {}).items():
                acc[s] += c * v
        vals = {D: v for D, v in group_by_color_set(Chain(acc), coloring).items() if v}
        if vals:
            bad[tau] = vals
    return bad


def eq3_residuals(old: BalanceState, new_B: dict) -> dict:
    """chi_C(boundary(A(tau) + B(boundary tau))) for |C| = k, nonzero entries only."""
    coloring = old.coloring
    bad = {}
    for tau in faces_of(old.spec.big_face(old.level - 1), old.level):
        chain = all_A(old)[tau]
        for sigma, c in boundary_cube(tau).items():
            if sigma in new_B:
                chain = chain + c * new_B[sigma]
        vals = {C: v for C, v in group_by_color_set(boundary(chain), coloring).items() if v}
        if vals:
            bad[tau] = vals
    return bad


def balance_residuals(state: BalanceState) -> dict:
    """chi_C(A(boundary rho)) over (k+1)-faces rho of F_k, nonzero entries only."""
    bad = {}
    if state.region.dim < state.level + 1:
        return bad
    for rho in state.faces(state.level + 1):
        vals = {C: v for C, v in group_by_color_set(A_of_chain(state, boundary_cube(rho)),
                                                    state.coloring).items() if v}
        if vals:
            bad[rho] = vals
    return bad


def verify_balanced(state: BalanceState) -> bool:
    return not balance_residuals(state)


def descend(state: BalanceState, check: bool = True) -> BalanceState:
    k = state.level
    if k < 1:
        raise DimensionError("already at level 0")
    xis = xi_all(state)
    pools = candidate_pools(state)
    new_B: dict = {}
    usage = Counter(state.usage)
    supports = {}
    entries = []
    level_usage: Counter = Counter()
    for D, pool in pools.items():
        build = build_eta(state, D, xis.get(D, Cochain()))
        part, used = realize(build.eta, pool)
        _merge(new_B, part)
        level_usage.update(used)
        supports[D] = set(used)
        entry = build.to_dict()
        entry.update(pool_size=len(pool), max_usage=max(used.values(), default=0))
        entries.append(entry)
    usage.update(level_usage)
    new_B = {s: c for s, c in sorted(new_B.items()) if c}
    if check:
        if eq4_residuals(state, new_B):
            raise InvariantError(f"balancing equality fails while descending from level {k}")
        if eq3_residuals(state, new_B):
            raise InvariantError(f"boundary form of the balancing equality fails at level {k}")
    trace = state.trace + [{"level": k, "entries": entries,
                            "max_multiplicity": max(level_usage.values(), default=0)}]
    new = BalanceState(state.spec, state.coloring, k - 1, new_B, usage, supports, trace)
    if check and not verify_balanced(new):
        raise InvariantError(f"level {k - 1} is not balanced after descent")
    return new


def run_descent(spec: GridSpec, coloring: Coloring, mode: str = SIMPLICIAL, check: bool = True) -> list:
    """All states from level m down to level 0."""
    state = init(spec, coloring, mode)
    if check and not verify_balanced(state):
        raise InvariantError("top level is not balanced for a valid coloring")
    states = [state]
    while state.level > 0:
        state = descend(state, check=check)
        states.append(state)
    return states


def calibrate_realization_sign(spec: Optional[GridSpec] = None, coloring: Optional[Coloring] = None) -> int:
    """The unique sign for which realized chains satisfy the balancing equality.

    The default reference instance (checkerboard, d=2, n=2, m=1) has xi_D
    nonzero on F_0, so exactly one sign survives.
    """
    from .coloring import checkerboard

    spec = spec or GridSpec(2, 2, 1)
    coloring = coloring or checkerboard(spec.d, spec.n)
    state = init(spec, coloring)
    pools = candidate_pools(state)
    builds = {D: build_eta(state, D) for D in pools}
    good = []
    for sign in (1, -1):
        new_B: dict = {}
        for D, pool in pools.items():
            _merge(new_B, realize(builds[D].eta, pool, sign)[0])
        if not eq4_residuals(state, new_B):
            good.append(sign)
    if len(good) != 1:
        raise InvariantError(f"reference instance does not determine the sign: {good}")
    return good[0]
