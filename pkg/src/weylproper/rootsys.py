"""Root systems of types A-G and the non-reduced type BC.

Coordinates are always taken in the basis of simple roots, so every root is
an integer vector, simple reflections act by integer matrices, and the
Weyl-invariant inner product (induced by the Killing form, normalised so
the Cartan matrix is integral) is a rational Gram matrix.

The Cartan convention is ``cartan[i][j] = <alpha_i, alpha_j^vee>``; the
pairing of a vector v (in simple-root coordinates) with the j-th simple
coroot is the dot product of v with column j of the Cartan matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactlin import Mat, Vec, mat_inverse, transpose

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")

_EXCEPTIONAL_WEYL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                            ("F", 4): 1152, ("G", 2): 12}


def _check_family_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    ok = {
        "A": rank >= 1, "B": rank >= 1, "C": rank >= 1, "BC": rank >= 1,
        "D": rank >= 2, "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2,
    }[family]
    if not ok:
        raise ValueError(f"invalid rank {rank} for family {family}")


@dataclass(frozen=True)
class RootSystemType:
    """A (possibly reducible) root system type: a tuple of (family, rank) parts."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        for family, rank in self.components:
            _check_family_rank(family, rank)

    @staticmethod
    def simple(family: str, rank: int) -> "RootSystemType":
        return RootSystemType(((family, rank),))

    @staticmethod
    def parse(text: str) -> "RootSystemType":
        """Parse strings like "F4", "BC2", "A1+A1" or "-" (the rank-0 type)."""
        text = text.strip()
        if text in ("-", "0", ""):
            return RootSystemType(())
        parts = []
        for piece in text.split("+"):
            piece = piece.strip()
            fam = "BC" if piece.startswith("BC") else piece[0]
            parts.append((fam, int(piece[len(fam):])))
        return RootSystemType(tuple(parts))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    def __str__(self) -> str:
        if not self.components:
            return "-"
        return "+".join(f"{fam}{rank}" for fam, rank in self.components)


def _simple_cartan(family: str, rank: int) -> list[list[int]]:
    n = rank
    c = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def edge(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if family in ("A", "B", "C", "BC"):
        for i in range(n - 1):
            edge(i, i + 1)
        if n >= 2:
            if family in ("B", "BC"):
                edge(n - 2, n - 1, -2, -1)
            elif family == "C":
                edge(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        if n >= 3:
            edge(n - 3, n - 1)
        elif n == 2:
            pass  # D2 is A1+A1: no bond
    elif family == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            edge(a, b)
        edge(1, 3)
    elif family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif family == "G":
        edge(0, 1, -1, -3)
    return c


def _simple_dvec(family: str, rank: int) -> list[Fraction]:
    """Half-norms d_i = (alpha_i, alpha_i)/2 making gram = C * diag(d) symmetric."""
    n = rank
    if family in ("A", "D", "E"):
        return [Fraction(1)] * n
    if family in ("B", "BC"):
        d = [Fraction(1)] * n
        if n >= 2:
            d[n - 1] = Fraction(1, 2)
        return d
    if family == "C":
        d = [Fraction(1)] * n
        if n >= 2:
            d[n - 1] = Fraction(2)
        return d
    if family == "F":
        return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    if family == "G":
        return [Fraction(1), Fraction(3)]
    raise ValueError(family)


def root_count(t: RootSystemType) -> int:
    total = 0
    for family, n in t.components:
        if family == "A":
            total += n * (n + 1)
        elif family in ("B", "C"):
            total += 2 * n * n
        elif family == "D":
            total += 2 * n * (n - 1)
        elif family == "BC":
            total += 2 * n * (n + 1)
        elif family == "E":
            total += {6: 72, 7: 126, 8: 240}[n]
        else:
            total += 48 if family == "F" else 12
    return total


def weyl_order_of_type(t: RootSystemType) -> int:
    order = 1
    for family, n in t.components:
        if family == "A":
            order *= _factorial(n + 1)
        elif family in ("B", "C", "BC"):
            order *= (1 << n) * _factorial(n)
        elif family == "D":
            order *= (1 << (n - 1)) * _factorial(n)
        else:
            order *= _EXCEPTIONAL_WEYL_ORDERS[(family, n)]
    return order


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True)
class RootSystem:
    """A root system with simple roots as the coordinate basis."""

    rtype: RootSystemType
    cartan: tuple[tuple[int, ...], ...]
    gram: Mat
    roots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def pairing(self, v: Sequence, j: int) -> Fraction | int:
        """<v, alpha_j^vee>, the coefficient governing the reflection s_j."""
        return sum(v[k] * self.cartan[k][j] for k in range(self.rank) if v[k])

    def reflect(self, j: int, v: Sequence) -> tuple:
        if not 0 <= j < self.rank:
            raise IndexError(f"simple root index {j} out of range")
        p = self.pairing(v, j)
        if p == 0:
            return tuple(v)
        out = list(v)
        out[j] = out[j] - p
        return tuple(out)

    def is_dominant(self, v: Sequence) -> bool:
        return all(self.pairing(v, j) >= 0 for j in range(self.rank))

    def inner(self, u: Sequence, v: Sequence):
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank)
                   if u[i] and self.gram[i][j])

    def norm(self, v: Sequence):
        return self.inner(v, v)

    def reflection_matrix(self, j: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        rows = []
        for i in range(n):
            if i != j:
                rows.append(tuple(int(i == k) for k in range(n)))
            else:
                rows.append(tuple((int(j == k)) - self.cartan[k][j] for k in range(n)))
        return tuple(rows)


def build_root_system(t: RootSystemType | str) -> RootSystem:
    """Construct the root system with roots generated by reflection closure.

    For type BC, the (non-reduced) root set is the closure for the
    underlying B system together with the doubles of its short roots.
    """
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    n = t.rank
    cartan = [[0] * n for _ in range(n)]
    dvec: list[Fraction] = []
    offset = 0
    nonreduced_blocks: list[tuple[int, int]] = []
    for family, rank in t.components:
        sub = _simple_cartan(family, rank)
        for i in range(rank):
            for j in range(rank):
                cartan[offset + i][offset + j] = sub[i][j]
        dvec.extend(_simple_dvec(family, rank))
        if family == "BC":
            nonreduced_blocks.append((offset, rank))
        offset += rank
    cartan_t = tuple(tuple(row) for row in cartan)
    gram = tuple(tuple(Fraction(cartan[i][j]) * dvec[j] for j in range(n)) for i in range(n))

    rs = RootSystem(t, cartan_t, gram, ())
    roots = _closure(rs)
    if nonreduced_blocks:
        extra = []
        for off, blk in nonreduced_blocks:
            in_block = [r for r in roots
                        if any(r[off:off + blk]) and not any(r[:off]) and not any(r[off + blk:])]
            short = min(rs.norm(r) for r in in_block)
            extra.extend(tuple(2 * x for x in r) for r in in_block if rs.norm(r) == short)
        roots = roots + tuple(extra)
    rs = RootSystem(t, cartan_t, gram, roots)
    if len(roots) != root_count(t):
        raise AssertionError(f"root count for {t}: got {len(roots)}, want {root_count(t)}")
    return rs


def _closure(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    n = rs.rank
    seen: set[tuple[int, ...]] = set()
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen.update(frontier)
    seen.update(tuple(-x for x in r) for r in frontier)
    while frontier:
        nxt = []
        for r in frontier:
            for j in range(n):
                image = rs.reflect(j, r)
                if image not in seen:
                    seen.add(image)
                    seen.add(tuple(-x for x in image))
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(seen))


@dataclass(frozen=True)
class WeylElement:
    """An element of the Weyl group as an integer matrix on simple-root coordinates."""

    matrix: tuple[tuple[int, ...], ...]
    word: Optional[tuple[int, ...]] = None

    def apply(self, v: Sequence) -> tuple:
        return tuple(sum(row[k] * v[k] for k in range(len(v)) if v[k]) for row in self.matrix)

    def compose(self, other: "WeylElement") -> "WeylElement":
        m = tuple(tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(len(self.matrix)))
                        for j in range(len(self.matrix))) for i in range(len(self.matrix)))
        word = None
        if self.word is not None and other.word is not None:
            word = other.word + self.word
        return WeylElement(m, word)

    def inverse(self) -> "WeylElement":
        inv = mat_inverse(self.matrix)
        m = tuple(tuple(int(x) for x in row) for row in inv)
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(m, word)

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (i == j) for i in range(n) for j in range(n))


def identity_element(rs: RootSystem) -> WeylElement:
    n = rs.rank
    return WeylElement(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), ())


def simple_reflection(rs: RootSystem, j: int) -> WeylElement:
    return WeylElement(rs.reflection_matrix(j), (j,))


def apply_word(rs: RootSystem, word: Iterable[int], v: Sequence) -> tuple:
    """Apply simple reflections to v in the order listed."""
    out = tuple(v)
    for j in word:
        out = rs.reflect(j, out)
    return out


def word_to_element(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    el = identity_element(rs)
    for j in word:
        el = simple_reflection(rs, j).compose(el)
    return WeylElement(el.matrix, tuple(word))


def fundamental_coweights(rs: RootSystem) -> list[Vec]:
    """Vectors v_i with <v_i, alpha_j^vee> = delta_ij, as simple-root coordinates."""
    if rs.rank == 0:
        return []
    inv = mat_inverse(transpose(tuple(tuple(Fraction(x) for x in row) for row in rs.cartan)))
    return [tuple(inv[k][i] for k in range(rs.rank)) for i in range(rs.rank)]


def longest_element(rs: RootSystem) -> WeylElement:
    """The longest element w0, computed by driving a strictly dominant vector
    to the antidominant chamber."""
    n = rs.rank
    v = tuple(sum(col) for col in zip(*fundamental_coweights(rs))) if n else ()
    word: list[int] = []
    el = identity_element(rs)
    while True:
        j = next((j for j in range(n) if rs.pairing(v, j) > 0), None)
        if j is None:
            break
        v = rs.reflect(j, v)
        word.append(j)
        el = simple_reflection(rs, j).compose(el)
    return WeylElement(el.matrix, tuple(word))


def weyl_order(rs: RootSystem) -> int:
    return weyl_order_of_type(rs.rtype)


def generate_weyl_group(rs: RootSystem, limit: int = 2_000_000) -> list[tuple[tuple[int, ...], ...]]:
    """All Weyl group elements as matrices, by closure under the generators.

    Intended for small ranks (cross-checks against the order formula).
    """
    gens = [rs.reflection_matrix(j) for j in range(rs.rank)]
    n = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                gm = tuple(tuple(sum(g[i][k] * m[k][j] for k in range(n)) for j in range(n))
                           for i in range(n))
                if gm not in seen:
                    seen.add(gm)
                    nxt.append(gm)
                    if len(seen) > limit:
                        raise ValueError("group generation exceeded limit")
        frontier = nxt
    return sorted(seen)


def cartan_permutation(candidate: Sequence[Sequence[int]],
                       target: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """A node relabelling sigma with candidate[i][j] == target[sigma(i)][sigma(j)].

    Returns None when the two Cartan matrices are not isomorphic.  Backtracking
    with degree pruning; intended for ranks up to 9.
    """
    n = len(candidate)
    if len(target) != n:
        return None

    def profile(c, i):
        return tuple(sorted((c[i][j], c[j][i]) for j in range(n) if j != i and c[i][j]))

    cand_prof = [profile(candidate, i) for i in range(n)]
    tgt_prof = [profile(target, i) for i in range(n)]
    if sorted(cand_prof) != sorted(tgt_prof):
        return None
    assignment: list[int] = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for t in range(n):
            if used[t] or tgt_prof[t] != cand_prof[i]:
                continue
            ok = all(candidate[i][j] == target[t][assignment[j]]
                     and candidate[j][i] == target[assignment[j]][t]
                     for j in range(i))
            if ok:
                assignment[i] = t
                used[t] = True
                if extend(i + 1):
                    return True
                used[t] = False
                assignment[i] = -1
        return False

    return assignment if extend(0) else None


def identify_cartan_matrix(c: Sequence[Sequence[int]]) -> tuple[RootSystemType, list[int]]:
    """Recognise a finite-type Cartan matrix; returns (type, permutation).

    The permutation maps input nodes to the node order of the standard
    Cartan matrix of the returned type (component by component).
    """
    n = len(c)
    comp_of = list(range(n))

    def find(i):
        while comp_of[i] != i:
            comp_of[i] = comp_of[comp_of[i]]
            i = comp_of[i]
        return i

    for i in range(n):
        for j in range(n):
            if i != j and c[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    comp_of[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    components = sorted(groups.values(), key=lambda g: g[0])
    parts: list[tuple[str, int]] = []
    perm = [-1] * n
    offset = 0
    for nodes in components:
        k = len(nodes)
        sub = [[c[a][b] for b in nodes] for a in nodes]
        hit = None
        for family in ("A", "B", "C", "D", "E", "F", "G"):
            try:
                _check_family_rank(family, k)
            except ValueError:
                continue
            std = _simple_cartan(family, k)
            sigma = cartan_permutation(sub, std)
            if sigma is not None:
                hit = (family, sigma)
                break
        if hit is None:
            raise ValueError("not a finite-type Cartan matrix")
        family, sigma = hit
        parts.append((family, k))
        for local, node in enumerate(nodes):
            perm[node] = offset + sigma[local]
        offset += k
    return RootSystemType(tuple(parts)), perm
