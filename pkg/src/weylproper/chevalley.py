"""Split semisimple Lie algebras over Q in a Chevalley basis.

Simply-laced algebras are built from the root lattice with a bimultiplicative
sign function: choosing, for each Dynkin-diagram edge, an orientation toward
the graph centre gives signs eps(a_i, a_j) that extend multiplicatively to
the lattice, and

    [x_a, x_b] = eps(a, b) x_{a+b}        (a + b a root)
    [x_a, x_{-a}] = -eps(a, -a) h_a = h_a (h_a the coroot)
    [h, x_b] = <b, h> x_b.

The non-simply-laced types are realised as fixed-point subalgebras of a
diagram automorphism of a simply-laced parent (B_n in D_{n+1}, C_n in
A_{2n-1}, F4 in E6, G2 in D4); the centre-oriented sign choice is invariant
under those automorphisms, so orbit sums of basis vectors give an exact
integral basis of the folded algebra.

Elements are sparse dicts {basis index: Fraction}.  Basis order: coroots
h_0..h_{n-1}, then one vector per root in the root-system order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactlin import Mat, Subspace, Vec, nullspace, rref, solve
from .rootsys import RootSystem, RootSystemType, build_root_system

Element = dict[int, Fraction]

_FOLDS: dict[str, tuple[str, ...]] = {
    # family -> (parent family template, see _fold_spec)
    "B": ("D",), "C": ("A",), "F": ("E",), "G": ("D",),
}


def _graph_center(cartan: Sequence[Sequence[int]]) -> int:
    n = len(cartan)
    adj = [[j for j in range(n) if j != i and cartan[i][j]] for i in range(n)]

    def ecc(start: int) -> int:
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return max(dist.values())

    eccs = [ecc(i) for i in range(n)]
    return eccs.index(min(eccs))


def _edge_signs(rs: RootSystem) -> list[list[int]]:
    """eps on pairs of simple roots: -1 on the diagonal and on centre-oriented
    edges, +1 elsewhere."""
    n = rs.rank
    center = _graph_center(rs.cartan) if n else 0
    adj = [[j for j in range(n) if j != i and rs.cartan[i][j]] for i in range(n)]
    dist = {center: 0}
    frontier = [center]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    eps = [[1] * n for _ in range(n)]
    for i in range(n):
        eps[i][i] = -1
        for j in adj[i]:
            if dist[j] < dist[i]:
                eps[i][j] = -1
    return eps


@dataclass
class ChevalleyAlgebra:
    rtype: RootSystemType
    rs: RootSystem
    dim: int
    rank: int
    basis_roots: tuple[tuple[int, ...], ...]   # basis index n+k -> root
    root_index: dict[tuple[int, ...], int]     # root -> basis index
    table: dict[tuple[int, int], Element]      # i < j -> [b_i, b_j]

    def bracket_basis(self, i: int, j: int) -> Element:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, ci in x.items():
            if not ci:
                continue
            for j, cj in y.items():
                if not cj:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    v = out.get(k, Fraction(0)) + ci * cj * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def coroot(self, i: int) -> Element:
        return {i: Fraction(1)}

    def root_vector(self, root: Sequence[int]) -> Element:
        return {self.root_index[tuple(root)]: Fraction(1)}

    def e(self, i: int) -> Element:
        """Raising vector for the i-th simple root."""
        root = tuple(int(i == j) for j in range(self.rank))
        return self.root_vector(root)

    def f(self, i: int) -> Element:
        """Lowering vector for the i-th simple root, normalised so that
        [e_i, f_i] = h_i."""
        root = tuple(-int(i == j) for j in range(self.rank))
        x = self.root_vector(root)
        probe = self.bracket(self.e(i), x)
        sign = probe.get(i, Fraction(0))
        if sign == 0:
            raise AssertionError("degenerate simple root pair")
        return {k: c / sign for k, c in x.items()}

    def cartan_from_a_coords(self, y: Sequence) -> Element:
        """The Cartan element H with beta(H) = (beta, y) for all weights beta,
        where y is a vector in Killing-identified simple-root coordinates."""
        out: Element = {}
        for i in range(self.rank):
            c = Fraction(y[i]) * self.rs.gram[i][i] / 2
            if c:
                out[i] = c
        return out

    def root_value(self, root: Sequence[int], h: Element) -> Fraction:
        """beta(h) for h supported on the Cartan."""
        return sum((c * self.rs.pairing(root, i) for i, c in h.items()), Fraction(0))

    def to_dense(self, x: Element) -> Vec:
        return tuple(Fraction(x.get(i, 0)) for i in range(self.dim))

    def from_dense(self, v: Sequence) -> Element:
        return {i: Fraction(c) for i, c in enumerate(v) if c}


def _build_simply_laced(t: RootSystemType) -> ChevalleyAlgebra:
    rs = build_root_system(t)
    n = rs.rank
    roots = rs.roots
    root_index = {r: n + k for k, r in enumerate(roots)}
    root_set = set(roots)
    eps_edge = _edge_signs(rs)

    def eps(a: Sequence[int], b: Sequence[int]) -> int:
        parity = 0
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if b[j] and eps_edge[i][j] == -1:
                    parity ^= (a[i] * b[j]) & 1
        return -1 if parity else 1

    table: dict[tuple[int, int], Element] = {}
    for i in range(n):
        for k, r in enumerate(roots):
            val = rs.pairing(r, i)
            if val:
                _set(table, i, n + k, {n + k: Fraction(val)})
    for ka, a in enumerate(roots):
        for kb, b in enumerate(roots):
            if kb <= ka:
                continue
            s = tuple(x + y for x, y in zip(a, b))
            if s in root_set:
                _set(table, n + ka, n + kb, {root_index[s]: Fraction(eps(a, b))})
            elif all(x == 0 for x in s):
                coroot = {i: Fraction(eps(a, b) * a[i]) for i in range(n) if a[i]}
                _set(table, n + ka, n + kb, coroot)
    return ChevalleyAlgebra(t, rs, n + len(roots), n, roots, root_index, table)


def _set(table: dict, i: int, j: int, value: Element) -> None:
    value = {k: Fraction(c) for k, c in value.items() if c}
    if not value:
        return
    if i < j:
        table[(i, j)] = value
    else:
        table[(j, i)] = {k: -c for k, c in value.items()}


def _fold_spec(family: str, rank: int) -> tuple[RootSystemType, list[list[int]]]:
    """Parent type and the orbit list (parent node indices per folded node)."""
    if family == "B":
        parent = RootSystemType.simple("D", rank + 1)
        orbits = [[i] for i in range(rank - 1)] + [[rank - 1, rank]]
    elif family == "C":
        m = 2 * rank - 1
        parent = RootSystemType.simple("A", m)
        orbits = [[i, m - 1 - i] for i in range(rank - 1)] + [[rank - 1]]
    elif family == "F":
        parent = RootSystemType.simple("E", 6)
        orbits = [[1], [3], [2, 4], [0, 5]]
    elif family == "G":
        parent = RootSystemType.simple("D", 4)
        orbits = [[0, 2, 3], [1]]
    else:
        raise ValueError(family)
    return parent, orbits


def _fold(t: RootSystemType) -> ChevalleyAlgebra:
    family, rank = t.components[0]
    parent_type, orbits = _fold_spec(family, rank)
    parent = _build_simply_laced(parent_type)
    pn = parent.rank
    sigma = list(range(pn))
    for orb in orbits:
        for a, b in zip(orb, orb[1:] + orb[:1]):
            sigma[a] = b
    eps_edge = _edge_signs(parent.rs)
    for i in range(pn):
        for j in range(pn):
            if eps_edge[i][j] != eps_edge[sigma[i]][sigma[j]]:
                raise AssertionError("sign choice is not invariant under the fold")

    def sigma_root(r: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * pn
        for i, c in enumerate(r):
            out[sigma[i]] = c
        return tuple(out)

    # basis of the fixed subalgebra: orbit sums of coroots and root vectors
    fold_basis: list[Element] = []
    for orb in orbits:
        fold_basis.append({i: Fraction(1) for i in orb})
    seen: set[tuple[int, ...]] = set()
    root_orbit_of: dict[int, int] = {}
    for r in parent.rs.roots:
        if r in seen:
            continue
        orb_roots = []
        cur = r
        while cur not in seen:
            seen.add(cur)
            orb_roots.append(cur)
            cur = sigma_root(cur)
        idx = len(fold_basis)
        fold_basis.append({parent.root_index[q]: Fraction(1) for q in orb_roots})
        for q in orb_roots:
            root_orbit_of[parent.root_index[q]] = idx

    member_of: dict[int, tuple[int, Fraction]] = {}
    for fi, elem in enumerate(fold_basis):
        for pidx in elem:
            member_of[pidx] = (fi, elem[pidx])

    def express(x: Element) -> Element:
        out: Element = {}
        for pidx, c in x.items():
            fi, w = member_of[pidx]
            prev = out.get(fi)
            coeff = c / w
            if prev is None:
                out[fi] = coeff
            elif prev != coeff:
                raise AssertionError("folded bracket left the fixed subalgebra")
        return {k: v for k, v in out.items() if v}

    dim = len(fold_basis)
    n = rank
    rs = build_root_system(t)

    table: dict[tuple[int, int], Element] = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            res = parent.bracket(fold_basis[i], fold_basis[j])
            # check equal coefficients across each orbit before folding
            folded = express(res)
            # verify: expanding back reproduces the parent bracket
            back: Element = {}
            for fi, c in folded.items():
                for pidx, w in fold_basis[fi].items():
                    back[pidx] = back.get(pidx, Fraction(0)) + c * w
            if {k: v for k, v in back.items() if v} != {k: v for k, v in res.items() if v}:
                raise AssertionError("folded bracket inconsistent")
            _set(table, i, j, folded)

    # identify folded root vectors with roots of the abstract folded system
    pair_vec = {}
    for fi in range(n, dim):
        elem = fold_basis[fi]
        rep = next(iter(elem))
        root = parent.basis_roots[rep - parent.rank]
        w = tuple(sum(parent.rs.pairing(root, i) for i in orbits[a]) for a in range(n))
        pair_vec[fi] = w
    target = {tuple(rs.pairing(r, a) for a in range(n)): r for r in rs.roots}
    if len(target) != len(rs.roots):
        raise AssertionError("folded root pairing vectors are not distinct")
    basis_roots: list[tuple[int, ...]] = []
    root_index: dict[tuple[int, ...], int] = {}
    for fi in range(n, dim):
        r = target.get(pair_vec[fi])
        if r is None:
            raise AssertionError("folded weight is not a root of the folded system")
        basis_roots.append(r)
        root_index[r] = fi
    if len(root_index) != len(rs.roots):
        raise AssertionError("folded root spaces do not biject with the folded roots")

    return ChevalleyAlgebra(t, rs, dim, n, tuple(basis_roots), root_index, table)


_algebra_cache: dict[RootSystemType, ChevalleyAlgebra] = {}


def build_split_algebra(t: RootSystemType | str) -> ChevalleyAlgebra:
    """The split Lie algebra of a simple reduced type, with integral
    structure constants and a deterministic sign convention."""
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    if not t.is_simple:
        raise ValueError("split algebras are built for simple types")
    family, rank = t.components[0]
    if family == "BC":
        raise ValueError("BC is a restricted-root-system type, not an algebra type")
    if t in _algebra_cache:
        return _algebra_cache[t]
    if family in ("A", "D", "E"):
        alg = _build_simply_laced(t)
    else:
        alg = _fold(t)
    _algebra_cache[t] = alg
    return alg


@dataclass(frozen=True)
class CartanDecomposition:
    """The split Cartan decomposition: theta(h) = -h, theta(x_b) = -x_{-b}."""

    k_basis: tuple[Element, ...]
    p_basis: tuple[Element, ...]
    p_subspace: Subspace
    algebra: ChevalleyAlgebra


def split_cartan_decomposition(alg: ChevalleyAlgebra) -> CartanDecomposition:
    k = []
    p = [alg.coroot(i) for i in range(alg.rank)]
    for r in alg.basis_roots:
        neg = tuple(-x for x in r)
        if r < neg:
            continue
        i, j = alg.root_index[r], alg.root_index[neg]
        k.append({i: Fraction(1), j: Fraction(-1)})
        p.append({i: Fraction(1), j: Fraction(1)})
    p_sub = Subspace.span([_dense(alg, e) for e in p], alg.dim)
    return CartanDecomposition(tuple(k), tuple(p), p_sub, alg)


def _dense(alg: ChevalleyAlgebra, x: Element) -> Vec:
    return alg.to_dense(x)


def theta_split(alg: ChevalleyAlgebra, x: Element) -> Element:
    out: Element = {}
    for i, c in x.items():
        if i < alg.rank:
            out[i] = out.get(i, Fraction(0)) - c
        else:
            neg = tuple(-v for v in alg.basis_roots[i - alg.rank])
            j = alg.root_index[neg]
            out[j] = out.get(j, Fraction(0)) - c
    return {k: v for k, v in out.items() if v}


def centralizer(alg: ChevalleyAlgebra, elements: Iterable[Element]) -> list[Element]:
    """Basis of {x : [x, s] = 0 for all s}, by iterated exact solving.

    Centralising a set of generators centralises the subalgebra they
    generate, since ad acts by derivations.
    """
    space: list[Vec] = [tuple(Fraction(int(i == j)) for j in range(alg.dim))
                        for i in range(alg.dim)]
    for s in elements:
        if not space:
            break
        rows = []
        images = []
        for b in space:
            img = alg.bracket(alg.from_dense(b), s)
            images.append(alg.to_dense(img))
        # solve sum c_k [b_k, s] = 0
        m = tuple(tuple(images[k][coord] for k in range(len(space)))
                  for coord in range(alg.dim))
        combos = nullspace(m)
        space = [tuple(sum(c[k] * space[k][i] for k in range(len(space)))
                       for i in range(alg.dim)) for c in combos]
        reduced, _ = rref(space)
        space = list(reduced)
    return [alg.from_dense(v) for v in space]


def extend_to_maximal_abelian(alg: ChevalleyAlgebra, dec: CartanDecomposition,
                              seed: Sequence[Element]) -> list[Element]:
    """Grow an abelian subspace of p to a maximal abelian subspace of p by
    repeatedly adjoining the first centraliser vector outside the current
    span (deterministic choice)."""
    for x in seed:
        if not dec.p_subspace.contains(_dense(alg, x)):
            raise ValueError("seed is not contained in p")
    for x in seed:
        for y in seed:
            if alg.bracket(x, y):
                raise ValueError("seed is not abelian")
    current = [dict(x) for x in seed]
    while True:
        span = Subspace.span([_dense(alg, x) for x in current], alg.dim)
        if span.dim != len(current):
            current = [alg.from_dense(v) for v in span.basis]
            continue
        if current:
            z = centralizer(alg, current)
        else:
            z = [{i: Fraction(1)} for i in range(alg.dim)]
        zp_rows = [_dense(alg, v) for v in z]
        zp = Subspace.span(zp_rows, alg.dim).intersection(dec.p_subspace)
        candidate = None
        for row in zp.basis:
            if not span.contains(row):
                candidate = row
                break
        if candidate is None:
            return current
        current.append(alg.from_dense(candidate))


@dataclass(frozen=True)
class Sl2Triple:
    h: Element
    e: Element
    f: Element


def sl2_completion(alg: ChevalleyAlgebra, h: Element,
                   trials: int = 24) -> Optional[Sl2Triple]:
    """Complete a candidate neutral element h (in the Cartan) to a triple
    (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h, or return None.

    e is sought in the +2 eigenspace of ad h with a deterministic sequence
    of coefficient patterns (generic choices succeed for genuine neutral
    elements); each candidate is certified exactly before returning.
    """
    if any(i >= alg.rank for i in h):
        raise ValueError("h must lie in the Cartan subalgebra")
    if not h:
        return None
    plus = [r for r in alg.basis_roots if alg.root_value(r, h) == 2]
    minus = [r for r in alg.basis_roots if alg.root_value(r, h) == -2]
    if not plus or not minus:
        return None
    rng = random.Random(20240801)
    patterns: list[list[int]] = [
        [1] * len(plus),
        [k + 1 for k in range(len(plus))],
        [(k + 1) ** 2 for k in range(len(plus))],
    ]
    while len(patterns) < trials:
        patterns.append([rng.randint(1, 9) for _ in range(len(plus))])
    target = alg.to_dense(h)
    for pat in patterns:
        e: Element = {}
        for c, r in zip(pat, plus):
            e[alg.root_index[r]] = Fraction(c)
        cols = []
        for r in minus:
            img = alg.bracket(e, alg.root_vector(r))
            cols.append(alg.to_dense(img))
        m = tuple(tuple(col[coord] for col in cols) for coord in range(alg.dim))
        sol = solve(m, target)
        if sol is None:
            continue
        f: Element = {}
        for c, r in zip(sol, minus):
            if c:
                f[alg.root_index[r]] = Fraction(c)
        he = alg.bracket(h, e)
        hf = alg.bracket(h, f)
        ef = alg.bracket(e, f)
        two_e = {k: 2 * c for k, c in e.items()}
        minus_two_f = {k: -2 * c for k, c in f.items()}
        if he == two_e and hf == minus_two_f and ef == h:
            return Sl2Triple(dict(h), e, f)
    return None


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    dim: int
    messages: tuple[str, ...]


def validate_embedding(alg: ChevalleyAlgebra, dec: CartanDecomposition,
                       columns: Sequence[Sequence]) -> EmbeddingReport:
    """Check that the given a-coordinate columns are independent and that the
    transported elements commute inside p."""
    msgs: list[str] = []
    cols = [tuple(Fraction(x) for x in c) for c in columns]
    span = Subspace.span(cols, alg.rank)
    if span.dim != len(cols):
        return EmbeddingReport(False, span.dim, ("columns are not linearly independent",))
    elems = [alg.cartan_from_a_coords(c) for c in cols]
    for i, x in enumerate(elems):
        if not dec.p_subspace.contains(_dense(alg, x)):
            msgs.append(f"column {i} does not land in p")
        for y in elems:
            if alg.bracket(x, y):
                msgs.append(f"column {i} does not commute with the image")
    ok = not msgs
    return EmbeddingReport(ok, len(cols), tuple(msgs))
