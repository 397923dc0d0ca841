"""Weyl-orbit machinery: dominant representatives, orbit sizes, lazy
full-orbit traversal, and early-exit subspace-intersection scans.

The traversal enumerates an orbit as a tree rooted at the dominant
representative, without materialising the group: a point mu != dominant
has the unique parent s_i(mu) for the smallest i with <mu, alpha_i^vee> < 0,
and the tree is walked depth-first with children taken in ascending index
order.  Memory is proportional to the stack (bounded by the length of the
longest element times the rank), not to the orbit.

Every traversal tracks the reflection word from the seed, so any reported
point can be reproduced by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Optional, Sequence

from .exactlin import Subspace, Vec, integer_kernel, primitive_integer_vector
from .rootsys import RootSystem, weyl_order_of_type, identify_cartan_matrix


class OrbitBudgetExceeded(Exception):
    """Raised when a scan hits its visit budget before reaching a verdict."""

    def __init__(self, points_visited: int):
        super().__init__(f"orbit scan budget exhausted after {points_visited} points")
        self.points_visited = points_visited


@dataclass(frozen=True)
class OrbitScanResult:
    outcome: str  # "empty_intersection" | "witness_found"
    witness: Optional[tuple[tuple, tuple[int, ...]]]  # (point, word from the seed)
    points_visited: int


@dataclass(frozen=True)
class TraversalSummary:
    points_visited: int
    stopped_early: bool


def dominant_representative(rs: RootSystem, v: Sequence) -> tuple[tuple, tuple[int, ...]]:
    """The unique orbit point in the closed positive chamber, plus a word
    mapping v to it (reflections applied left to right)."""
    cur = tuple(v)
    word: list[int] = []
    while True:
        j = next((j for j in range(rs.rank) if rs.pairing(cur, j) < 0), None)
        if j is None:
            return cur, tuple(word)
        cur = rs.reflect(j, cur)
        word.append(j)


def same_orbit(rs: RootSystem, u: Sequence, v: Sequence) -> bool:
    return dominant_representative(rs, u)[0] == dominant_representative(rs, v)[0]


def orbit_size(rs: RootSystem, v: Sequence) -> int:
    """|W| / |Stab(v)|; the stabiliser of a dominant point is the parabolic
    subgroup generated by the simple reflections fixing it."""
    dom, _ = dominant_representative(rs, v)
    fixed = [j for j in range(rs.rank) if rs.pairing(dom, j) == 0]
    if not fixed:
        return weyl_order_of_type(rs.rtype)
    sub = [[rs.cartan[a][b] for b in fixed] for a in fixed]
    stab_type, _ = identify_cartan_matrix(sub)
    return weyl_order_of_type(rs.rtype) // weyl_order_of_type(stab_type)


def _snow_children(rs: RootSystem, v: tuple):
    """Child points of v in the orbit tree, in ascending reflection index."""
    n = rs.rank
    for i in range(n):
        if rs.pairing(v, i) <= 0:
            continue
        child = rs.reflect(i, v)
        if all(rs.pairing(child, j) >= 0 for j in range(i)):
            yield i, child


def orbit_iterate(rs: RootSystem, v: Sequence,
                  visitor: Callable[[tuple, tuple[int, ...]], object],
                  budget: Optional[int] = None,
                  progress: Optional[Callable[[int], None]] = None,
                  progress_every: int = 1_000_000) -> TraversalSummary:
    """Visit every point of W·v exactly once, depth first from the dominant
    representative.  The visitor receives (point, word from v); a truthy
    return value stops the traversal."""
    dom, seed_word = dominant_representative(rs, v)
    stack: list[tuple[tuple, tuple[int, ...]]] = [(dom, seed_word)]
    visited = 0
    while stack:
        point, word = stack.pop()
        visited += 1
        if budget is not None and visited > budget:
            raise OrbitBudgetExceeded(visited)
        if progress is not None and visited % progress_every == 0:
            progress(visited)
        if visitor(point, word):
            return TraversalSummary(visited, True)
        children = list(_snow_children(rs, point))
        for i, child in reversed(children):
            stack.append((child, word + (i,)))
    return TraversalSummary(visited, False)


def orbit_meets_subspace(rs: RootSystem, v: Sequence, s: Subspace,
                         budget: Optional[int] = None,
                         progress: Optional[Callable[[int], None]] = None) -> OrbitScanResult:
    """Scan W·v for a point of the subspace, stopping at the first hit in
    traversal order; an empty_intersection verdict requires the full orbit."""
    if s.ambient_dim != rs.rank:
        raise ValueError("subspace ambient dimension does not match the root system")
    hit: list[tuple[tuple, tuple[int, ...]]] = []

    def visit(point, word):
        if s.contains(point):
            hit.append((point, word))
            return True
        return False

    summary = orbit_iterate(rs, v, visit, budget=budget, progress=progress)
    if hit:
        return OrbitScanResult("witness_found", hit[0], summary.points_visited)
    return OrbitScanResult("empty_intersection", None, summary.points_visited)


def _ldl(gram: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """LDL^T decomposition of a positive-definite rational matrix."""
    n = len(gram)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        for j in range(i + 1):
            acc = gram[i][j] - sum(lower[i][k] * lower[j][k] * diag[k] for k in range(j))
            if i == j:
                if acc <= 0:
                    raise ValueError("matrix is not positive definite")
                diag[i] = acc
                lower[i][i] = Fraction(1)
            else:
                lower[i][j] = acc / diag[j]
    return lower, diag


def _floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative rational."""
    if x < 0:
        raise ValueError("negative radicand")
    return isqrt(x.numerator * x.denominator) // x.denominator


def lattice_points_of_norm(basis: Sequence[tuple[int, ...]], gram_fn, target,
                           budget: Optional[int] = None) -> list[tuple]:
    """All integer combinations x = sum t_a basis_a with gram_fn-norm exactly
    target, in a deterministic order.

    gram_fn(u, v) must be a positive-definite rational form.  Enumeration is
    the classical nested-interval walk on the LDL^T decomposition of the
    basis Gram matrix.
    """
    r = len(basis)
    if r == 0:
        return []
    gb = [[Fraction(gram_fn(basis[a], basis[b])) for b in range(r)] for a in range(r)]
    lower, diag = _ldl(gb)
    target = Fraction(target)
    out: list[tuple] = []
    coeffs = [0] * r
    steps = 0

    def recurse(level: int, remaining: Fraction) -> None:
        nonlocal steps
        # centre of the interval for t_level given the choices above it
        shift = sum(lower[k][level] * coeffs[k] for k in range(level + 1, r))
        bound = remaining / diag[level]
        root = _floor_sqrt(bound)
        lo = -root - 1 - _ceil_frac(shift)
        hi = root + 1 - _floor_frac(shift)
        for t in range(lo, hi + 1):
            val = diag[level] * (t + shift) ** 2
            if val > remaining:
                continue
            steps += 1
            if budget is not None and steps > budget:
                raise OrbitBudgetExceeded(steps)
            coeffs[level] = t
            if level == 0:
                if val == remaining:
                    point = tuple(sum(coeffs[a] * basis[a][i] for a in range(r))
                                  for i in range(len(basis[0])))
                    out.append(point)
            else:
                recurse(level - 1, remaining - val)
        coeffs[level] = 0

    recurse(r - 1, target)
    return out


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def subspace_lattice_basis(s: Subspace) -> list[tuple[int, ...]]:
    """Basis of the lattice of integer points of a rational subspace."""
    ann = s.annihilator()
    if not ann:
        n = s.ambient_dim
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return integer_kernel(tuple(ann))


def norm_lattice_intersection(rs: RootSystem, h: Sequence, s: Subspace,
                              budget: Optional[int] = None) -> OrbitScanResult:
    """Decide whether W·h meets the subspace, without traversing the orbit.

    Every orbit point is an integer vector (after the harmless primitive
    rescaling of h) with the same invariant norm as h, so the intersection
    is exactly the set of integer lattice points of the subspace with that
    norm whose dominant representative is h.  The witness word maps h to
    the witness point.  Equivalent to orbit_meets_subspace in outcome;
    points_visited counts enumeration steps instead.
    """
    if s.ambient_dim != rs.rank:
        raise ValueError("subspace ambient dimension does not match the root system")
    if all(x == 0 for x in h):
        if s.contains(tuple(Fraction(x) for x in h)):
            return OrbitScanResult("witness_found", (tuple(h), ()), 1)
        return OrbitScanResult("empty_intersection", None, 1)
    hp = primitive_integer_vector(tuple(Fraction(x) for x in h))
    scale = next(Fraction(a) / b for a, b in zip(h, hp) if b)
    hdom, seed_word = dominant_representative(rs, hp)
    basis = subspace_lattice_basis(s)
    if len(basis) == 0:
        return OrbitScanResult("empty_intersection", None, 0)
    target = rs.norm(hp)
    candidates = lattice_points_of_norm(basis, rs.inner, target, budget=budget)
    candidates.sort()
    for x in candidates:
        dom, word_to_dom = dominant_representative(rs, x)
        if dom == hdom:
            # word sending h to x: ascend h to the dominant point, then
            # retrace x's ascent backwards
            witness_word = seed_word + tuple(reversed(word_to_dom))
            point = tuple(Fraction(c) * scale for c in x)
            return OrbitScanResult("witness_found", (point, witness_word), len(candidates))
    return OrbitScanResult("empty_intersection", None, len(candidates))
