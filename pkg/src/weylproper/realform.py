"""Real forms of simple complex Lie algebras via Satake diagrams.

A Satake diagram is the Dynkin diagram of the complexification with a set
of black (compact) nodes and an involutive arrow pairing on white nodes.
From that data alone this module derives, with exact arithmetic:

  * the restriction map from complex Cartan coordinates to the split
    Cartan subspace a (functionals vanishing on a are spanned by the black
    simple roots and by the differences of arrow-paired simple roots);
  * the restricted root system (possibly non-reduced, type BC), cross
    validated against the expected type and real rank recorded in the
    bundled catalog, failing loudly on any mismatch;
  * the b-space: the span of the dominant vectors fixed by -w0, whose
    dimension is the a-hyperbolic rank.

Catalog records live in ``data/satake_catalog.txt`` (one line per form;
see ``parse_catalog_line``).  The directory can be overridden with the
``WEYLPROPER_DATA`` environment variable.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .exactlin import Mat, Subspace, Vec, mat_inverse, solve, vec
from .rootsys import (RootSystem, RootSystemType, build_root_system, cartan_permutation,
                      fundamental_coweights, longest_element, weyl_order_of_type)


@dataclass(frozen=True)
class SatakeDiagram:
    complex_type: RootSystemType
    black_nodes: frozenset[int]          # 0-indexed
    arrows: tuple[tuple[int, int], ...]  # sorted 0-indexed pairs

    def validate(self) -> None:
        if not self.complex_type.is_simple:
            raise ValueError("Satake diagrams are recorded for simple complex types")
        n = self.complex_type.rank
        cartan = build_root_system(self.complex_type).cartan
        seen: set[int] = set()
        iota = list(range(n))
        for a, b in self.arrows:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bad arrow ({a},{b})")
            if a in self.black_nodes or b in self.black_nodes:
                raise ValueError("arrows must pair white nodes")
            if a in seen or b in seen:
                raise ValueError("arrow pairing must be an involution")
            seen.update((a, b))
            iota[a], iota[b] = b, a
        for j in self.black_nodes:
            if not 0 <= j < n:
                raise ValueError(f"black node {j} out of range")
        # The white pairing must extend to an involutive automorphism of the
        # whole diagram; on black nodes the extension may be nontrivial.
        black = sorted(self.black_nodes)
        white = [i for i in range(n) if i not in self.black_nodes]

        def consistent(assign: dict[int, int], i: int, t: int) -> bool:
            for j, tj in assign.items():
                if cartan[i][j] != cartan[t][tj] or cartan[j][i] != cartan[tj][t]:
                    return False
            return True

        def extend(k: int, assign: dict[int, int]) -> bool:
            if k == len(black):
                return True
            i = black[k]
            if i in assign:
                return extend(k + 1, assign)
            for t in black:
                if t in assign:
                    continue
                if not consistent(assign, i, t):
                    continue
                if t != i and (not consistent(assign, t, i) or cartan[i][t] != cartan[t][i]):
                    continue
                assign[i] = t
                if t != i:
                    assign[t] = i
                if extend(k + 1, assign):
                    return True
                del assign[i]
                if t != i:
                    del assign[t]
            return False

        base = {i: iota[i] for i in white}
        for i in white:
            for j in white:
                if cartan[i][j] != cartan[iota[i]][iota[j]]:
                    raise ValueError("arrow pairing is not a diagram automorphism "
                                     "on the white nodes")
        if not extend(0, base):
            raise ValueError("arrow pairing does not extend to a diagram automorphism")

    @property
    def white_orbits(self) -> tuple[tuple[int, ...], ...]:
        n = self.complex_type.rank
        pair = {a: b for a, b in self.arrows} | {b: a for a, b in self.arrows}
        orbits = []
        done: set[int] = set()
        for i in range(n):
            if i in self.black_nodes or i in done:
                continue
            orb = tuple(sorted({i, pair.get(i, i)}))
            done.update(orb)
            orbits.append(orb)
        return tuple(orbits)


@dataclass(frozen=True)
class RealForm:
    name: str
    satake: SatakeDiagram
    restricted_type: RootSystemType
    real_rank: int
    restriction_map: Mat                         # complex coords -> restricted coords
    complex_system: RootSystem
    restricted_system: RootSystem
    restricted_multiplicities: dict

    def __repr__(self) -> str:  # keep dataclass noise out of reports
        return f"RealForm({self.name})"


@dataclass(frozen=True)
class BSpaceData:
    b_plus_generators: tuple[Vec, ...]
    b: Subspace
    a_hyperbolic_rank: int


def derive_real_form(name: str, satake: SatakeDiagram,
                     expected_restricted: RootSystemType,
                     expected_real_rank: int) -> RealForm:
    """Recompute restricted data from the Satake diagram and cross-validate
    against the expected catalog fields."""
    satake.validate()
    crs = build_root_system(satake.complex_type)
    n = crs.rank
    orbits = satake.white_orbits
    r = len(orbits)
    if r != expected_real_rank:
        raise ValueError(f"{name}: white orbit count {r} != declared real rank "
                         f"{expected_real_rank}")
    orbit_of = {}
    for a, orb in enumerate(orbits):
        for i in orb:
            orbit_of[i] = a

    def restrict_coords(root: Sequence) -> tuple:
        out = [0] * r
        for i, c in enumerate(root):
            if c and i in orbit_of:
                out[orbit_of[i]] += c
        return tuple(out)

    images = {restrict_coords(root) for root in crs.roots}
    images.discard((0,) * r)

    if r == 0:
        if images:
            raise ValueError(f"{name}: rank-0 form with nonzero restricted roots")
        if expected_restricted.rank != 0:
            raise ValueError(f"{name}: expected restricted type {expected_restricted}")
        rrs = build_root_system(expected_restricted)
        return RealForm(name, satake, expected_restricted, 0, (), crs, rrs, {})

    # functionals vanishing on a: black simple roots and arrow differences
    def unit(i: int) -> list[Fraction]:
        return [Fraction(int(i == j)) for j in range(n)]

    u_basis: list[list[Fraction]] = [unit(j) for j in sorted(satake.black_nodes)]
    for a, b in satake.arrows:
        row = unit(a)
        row[b] -= 1
        u_basis.append(row)

    lam: list[Vec] = []
    for orb in orbits:
        rep = unit(orb[0])
        if u_basis:
            m = tuple(tuple(crs.inner(ua, ub) for ub in u_basis) for ua in u_basis)
            rhs = tuple(crs.inner(ua, rep) for ua in u_basis)
            coeff = solve(m, rhs)
            if coeff is None:
                raise ValueError(f"{name}: projection solve failed")
            for c, ua in zip(coeff, u_basis):
                rep = [x - c * y for x, y in zip(rep, ua)]
        lam.append(tuple(rep))
    # restrictions of arrow partners must agree
    for a, b in satake.arrows:
        pa = restrict_coords(unit(a))
        pb = restrict_coords(unit(b))
        if pa != pb:
            raise ValueError(f"{name}: arrow partners restrict differently")

    gram_lam = [[crs.inner(lam[a], lam[b]) for b in range(r)] for a in range(r)]
    for a in range(r):
        if gram_lam[a][a] == 0:
            raise ValueError(f"{name}: restricted simple root {a} collapsed to zero")
    derived_cartan = [[2 * gram_lam[a][b] / gram_lam[b][b] for b in range(r)] for a in range(r)]
    if any(x.denominator != 1 for row in derived_cartan for x in row):
        raise ValueError(f"{name}: derived restricted Cartan matrix is not integral")
    derived_cartan = [[int(x) for x in row] for row in derived_cartan]

    doubled = any(tuple(2 * x for x in img) in images for img in images)
    expected_family = expected_restricted.components[0][0] if expected_restricted.is_simple else None
    if doubled != (expected_family == "BC"):
        raise ValueError(f"{name}: non-reduced restriction? got doubled={doubled}, "
                         f"expected type {expected_restricted}")

    rrs = build_root_system(expected_restricted)
    sigma = cartan_permutation(derived_cartan, [list(row) for row in rrs.cartan])
    if sigma is None:
        raise ValueError(f"{name}: derived restricted Cartan does not match "
                         f"{expected_restricted}")

    def permute(img: Sequence) -> tuple:
        out = [0] * r
        for a in range(r):
            out[sigma[a]] = img[a]
        return tuple(out)

    mapped = {permute(img) for img in images}
    if mapped != set(rrs.roots):
        raise ValueError(f"{name}: restricted root set does not match {expected_restricted}")

    # Gram consistency: the Killing-induced form on a must be proportional to
    # the normalised form of the abstract restricted system.
    ratio = Fraction(gram_lam[0][0]) / rrs.gram[sigma[0]][sigma[0]]
    for a in range(r):
        for b in range(r):
            if Fraction(gram_lam[a][b]) != ratio * rrs.gram[sigma[a]][sigma[b]]:
                raise ValueError(f"{name}: restricted Gram matrix mismatch")

    restriction = [[0] * n for _ in range(r)]
    for a, orb in enumerate(orbits):
        for i in orb:
            restriction[sigma[a]][i] = 1
    restriction_map = tuple(tuple(Fraction(x) for x in row) for row in restriction)

    mults: dict[tuple, int] = {}
    for root in crs.roots:
        img = restrict_coords(root)
        if any(img):
            key = permute(img)
            mults[key] = mults.get(key, 0) + 1

    return RealForm(name, satake, expected_restricted, r, restriction_map,
                    crs, rrs, mults)


def restricted_root_system(rf: RealForm) -> RootSystem:
    return rf.restricted_system


def little_weyl_group_order(rf: RealForm) -> int:
    return weyl_order_of_type(rf.restricted_type)


def b_space(rf: RealForm) -> BSpaceData:
    """Fixed space of -w0 on a: generators are the -w0 symmetrisations of the
    fundamental coweights; their span is b and dim b is the a-hyperbolic rank."""
    rrs = rf.restricted_system
    r = rrs.rank
    if r == 0:
        return BSpaceData((), Subspace.span([], 0), 0)
    w0 = longest_element(rrs)
    gens: list[Vec] = []
    seen: set[tuple] = set()
    for v in fundamental_coweights(rrs):
        g = tuple(a - b for a, b in zip(v, w0.apply(v)))
        if g in seen:
            continue
        seen.add(g)
        gens.append(g)
    span = Subspace.span(gens, r)
    # deduplicate: each involution orbit of coweights contributes one generator
    uniq = tuple(dict.fromkeys(gens))
    return BSpaceData(uniq, span, span.dim)


def a_hyperbolic_rank(rf: RealForm) -> int:
    return b_space(rf).a_hyperbolic_rank


# --------------------------------------------------------------------------
# catalog


_CATALOG_FILE = "satake_catalog.txt"
_catalog_cache: dict[str, dict] = {}
_form_cache: dict[str, RealForm] = {}


def data_path(filename: str):
    override = os.environ.get("WEYLPROPER_DATA")
    if override:
        return os.path.join(override, filename)
    return resources.files("weylproper").joinpath("data").joinpath(filename)


def _read_data_text(filename: str) -> str:
    p = data_path(filename)
    if isinstance(p, str):
        with open(p, "r", encoding="utf-8") as fh:
            return fh.read()
    return p.read_text(encoding="utf-8")


def normalize_form_name(name: str) -> str:
    key = name.replace(" ", "").lower()
    m = re.fullmatch(r"(so|su|sp)\((\d+),(\d+)\)", key)
    if m:
        fam, p, q = m.group(1), int(m.group(2)), int(m.group(3))
        p, q = sorted((p, q))
        key = f"{fam}({p},{q})"
    return key


def parse_catalog_line(line: str) -> Optional[dict]:
    """Catalog schema: ``name | complex | black | arrows | restricted | rank``
    with 1-indexed node lists, ``-`` for empty fields, arrows as ``i:j`` pairs."""
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    parts = [p.strip() for p in line.split("|")]
    if len(parts) != 6:
        raise ValueError(f"malformed catalog line: {line!r}")
    name, ctype, black, arrows, restricted, rank = parts
    black_set = frozenset(int(x) - 1 for x in black.split(",")) if black != "-" else frozenset()
    arrow_list = []
    if arrows != "-":
        for piece in arrows.split(","):
            a, b = piece.split(":")
            arrow_list.append(tuple(sorted((int(a) - 1, int(b) - 1))))
    return {
        "name": name,
        "complex_type": RootSystemType.parse(ctype),
        "black": black_set,
        "arrows": tuple(sorted(arrow_list)),
        "restricted": RootSystemType.parse(restricted),
        "real_rank": int(rank),
    }


def _catalog() -> dict[str, dict]:
    if not _catalog_cache:
        text = _read_data_text(_CATALOG_FILE)
        for line in text.splitlines():
            rec = parse_catalog_line(line)
            if rec is None:
                continue
            key = normalize_form_name(rec["name"])
            if key in _catalog_cache:
                raise ValueError(f"duplicate catalog entry {rec['name']}")
            _catalog_cache[key] = rec
    return _catalog_cache


def catalog_names() -> list[str]:
    return [rec["name"] for rec in _catalog().values()]


def lookup_real_form(name: str) -> RealForm:
    key = normalize_form_name(name)
    if key in _form_cache:
        return _form_cache[key]
    rec = _catalog().get(key)
    if rec is None:
        raise KeyError(f"unknown real form {name!r}")
    satake = SatakeDiagram(rec["complex_type"], rec["black"], rec["arrows"])
    rf = derive_real_form(rec["name"], satake, rec["restricted"], rec["real_rank"])
    _form_cache[key] = rf
    return rf


def validate_catalog() -> list[str]:
    """Derive every catalog entry, returning the list of validated names.
    Raises on the first inconsistency."""
    return [lookup_real_form(name).name for name in catalog_names()]
