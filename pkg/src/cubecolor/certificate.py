"""Endgame on the bottom level: the color that every A(v) must contain.

At level 0 each vertex v of F_0 has a 0-chain A(v) = v + boundary(B(v))
with coefficient sum 1. Balance makes chi_c(A(v)) independent of v, so some
color c has x_c != 0 and appears in the support of every A(v). Picking one
c-colored vertex per support yields the witness set.
"""
from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Chain, boundary
from .balancing import BalanceState, run_descent
from .coloring import Coloring, SIMPLICIAL, split_components
from .cubical import CubeFace, GridSpec, Simplex, Vertex
from .errors import InvariantError


@dataclass
class Certificate:
    color: int
    x: dict
    witnesses: list
    incidence_bound: int
    per_vertex_support: Optional[dict] = field(default=None)

    @property
    def witness_count(self) -> int:
        return len(self.witnesses)


def vertex_chain(state: BalanceState, v: Vertex) -> Chain:
    """A(v) at level 0."""
    a = Chain({Simplex((v,)): 1})
    b = state.B.get(CubeFace(v, ()))
    if b:
        a = a + boundary(b)
    return a


def color_values(a: Chain, coloring: Coloring) -> dict:
    out: dict = defaultdict(int)
    for s, v in a.items():
        out[coloring[s.vertices[0]]] += v
    return {c: v for c, v in sorted(out.items()) if v}


def edge_load(state: BalanceState) -> Counter:
    """Per vertex w: total |coefficient| of 1-simplices at w over all B(v)."""
    load: Counter = Counter()
    for chain in state.B.values():
        for s, v in chain.items():
            for w in s.vertices:
                load[w] += abs(v)
    return load


def incidence_bound(state: BalanceState, color: int) -> int:
    load = edge_load(state)
    coloring = state.coloring
    return 1 + max((load[w] for w in load if coloring[w] == color), default=0)


def _bfs_order(state: BalanceState) -> list:
    region = state.spec.big_face(0)
    start = tuple(lo for lo, _ in region.bounds)
    seen = {start}
    order = []
    queue = deque([(start, None)])
    while queue:
        v, parent = queue.popleft()
        order.append((v, parent))
        for axis in region.free_axes:
            for step in (-1, 1):
                w = list(v)
                w[axis] += step
                w = tuple(w)
                if w not in seen and region.contains_vertex(w):
                    seen.add(w)
                    queue.append((w, v))
    return order


def endgame(state: BalanceState, coloring: Optional[Coloring] = None, audit: bool = False) -> Certificate:
    if state.level != 0:
        raise InvariantError(f"endgame needs a level-0 state, got level {state.level}")
    coloring = coloring or state.coloring
    chains = {}
    values = {}
    for v, parent in _bfs_order(state):
        chains[v] = vertex_chain(state, v)
        values[v] = color_values(chains[v], coloring)
        if parent is not None and values[v] != values[parent]:
            raise InvariantError(f"chi_c(A(v)) differs between adjacent {parent} and {v}")
    x = next(iter(values.values()))
    if sum(x.values()) != 1:
        raise InvariantError(f"color values sum to {sum(x.values())}, not 1")
    if not x:
        raise InvariantError("no color has a nonzero value")
    color = min(x)
    witnesses = set()
    for v in sorted(chains):
        hits = [s.vertices[0] for s in chains[v] if coloring[s.vertices[0]] == color]
        witnesses.add(min(hits))
    supports = None
    if audit:
        supports = {v: [(s.vertices[0], c) for s, c in chains[v].items()] for v in sorted(chains)}
    return Certificate(color, x, sorted(witnesses), incidence_bound(state, color), supports)


def lower_bound(cert: Certificate) -> int:
    return cert.witness_count


def verify_certificate(spec: GridSpec, coloring: Coloring, state: BalanceState, cert: Certificate) -> bool:
    """Recompute everything the certificate claims from the level-0 state."""
    if state.level != 0:
        return False
    region = spec.big_face(0)
    chains = {v: vertex_chain(state, v) for v in region.vertices()}
    xs = [color_values(a, coloring) for a in chains.values()]
    if any(x != xs[0] for x in xs):
        return False
    x = xs[0]
    if x != cert.x or sum(cert.x.values()) != 1 or not cert.x.get(cert.color):
        return False
    wset = set(map(tuple, cert.witnesses))
    if len(wset) != len(cert.witnesses):
        return False
    cube = spec.cube
    for w in wset:
        if not cube.contains_vertex(w) or coloring[w] != cert.color:
            return False
    for a in chains.values():
        if not any(s.vertices[0] in wset for s in a):
            return False
    if cert.incidence_bound != incidence_bound(state, cert.color):
        return False
    if len(wset) * cert.incidence_bound < (spec.n + 1) ** (spec.d - spec.m):
        return False
    if coloring.usage()[cert.color] < len(wset):
        return False
    if cert.per_vertex_support is not None:
        for v, a in chains.items():
            if sorted(cert.per_vertex_support.get(v, [])) != sorted((s.vertices[0], c) for s, c in a.items()):
                return False
    return True


@dataclass
class PipelineResult:
    spec: GridSpec
    coloring: Coloring
    states: list
    certificate: Certificate
    verified: bool

    @property
    def final(self) -> BalanceState:
        return self.states[-1]

    @property
    def trace(self) -> list:
        return self.final.trace


def certify(spec: GridSpec, coloring: Coloring, mode: str = SIMPLICIAL, split: bool = False,
            adjacency: Optional[str] = None, audit: bool = False, check: bool = True) -> PipelineResult:
    """Validate, descend to level 0, extract and verify a certificate."""
    if split:
        coloring = split_components(spec, coloring, adjacency or mode, mode=mode)
    states = run_descent(spec, coloring, mode, check=check)
    cert = endgame(states[-1], coloring, audit=audit)
    return PipelineResult(spec, coloring, states, cert, verify_certificate(spec, coloring, states[-1], cert))
