"""Skeletal symmetric monoidal groupoids and one-dimensional field theories.

A skeletal rigid symmetric monoidal groupoid is stored as a pair of finitely
generated abelian groups (object classes and unit automorphisms) together
with a table for the symmetry's self-braiding classes and an optional
associator table.  The diagonal of the symmetry table is the k-invariant,
and equivalence of two such groupoids reduces to matching the groups and
intertwining that invariant.

The field-theory half evaluates 1-dimensional cobordisms against a choice
of symmetric pairing over an exact field: cup pairs insert the pairing,
caps insert its inverse when one exists, and the extension criterion is
exactly nondegeneracy of the pairing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cob1 import (
    Matching1D,
    RestrictedMorphism,
    cap_matching,
    compose_abstract,
    cup_matching,
    matching,
)
from .exactmath import AbelianInvariants, quotient_group
from .limits import ResourceLimitExceeded
from .localize import planar_localization_data

# ---------------------------------------------------------------------------
# Exact fields


def _check_prime(p: int) -> None:
    if p < 2:
        raise ValueError(f"{p} is not prime")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not prime")
        d += 1


@dataclass(frozen=True)
class RationalField:
    """The rationals with Fraction elements.

    >>> QQ.parse("3/4") + QQ.one()
    Fraction(7, 4)
    """

    @property
    def name(self) -> str:
        return "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def parse(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise ValueError(f"cannot read rational from {value!r}")
        return Fraction(value)

    def to_json(self, a):
        if a.denominator == 1:
            return int(a.numerator)
        return f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class PrimeField:
    """Integers mod a prime, elements stored as canonical residues.

    >>> F5 = PrimeField(5)
    >>> F5.inv(3)
    2
    >>> F5.parse("1/2")
    3
    """

    p: int

    def __post_init__(self):
        _check_prime(self.p)

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.p

    def from_int(self, k: int) -> int:
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def parse(self, value) -> int:
        if isinstance(value, bool):
            raise ValueError(f"cannot read field element from {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            frac = Fraction(value)
            return self.mul(frac.numerator % self.p, self.inv(frac.denominator))
        raise ValueError(f"cannot read field element from {value!r}")

    def to_json(self, a):
        return int(a)


QQ = RationalField()


def field_from_spec(spec: str):
    """Read a field name: ``Q`` for the rationals, ``F5`` or ``5`` for mod 5."""
    text = str(spec).strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    if text and text[0] in "Ff":
        text = text[1:]
    if not text.isdigit():
        raise ValueError(f"unknown field {spec!r}")
    return PrimeField(int(text))


# ---------------------------------------------------------------------------
# Exact matrices over a field (rows as tuples)


def mat_from_rows(fld, rows) -> tuple[tuple, ...]:
    out = tuple(tuple(fld.parse(v) for v in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def mat_identity(fld, n: int) -> tuple[tuple, ...]:
    return tuple(
        tuple(fld.one() if i == j else fld.zero() for j in range(n)) for i in range(n)
    )


def mat_transpose(a) -> tuple[tuple, ...]:
    return tuple(zip(*a)) if a else ()


def mat_mul(fld, a, b) -> tuple[tuple, ...]:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a[0])} columns vs {len(b)} rows")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [fld.zero()] * cols
        for k, v in enumerate(row):
            if v == fld.zero():
                continue
            brow = b[k]
            for j in range(cols):
                acc[j] = fld.add(acc[j], fld.mul(v, brow[j]))
        out.append(tuple(acc))
    return tuple(out)


def mat_kron(fld, a, b) -> tuple[tuple, ...]:
    """Kronecker product; the left factor owns the most significant index."""
    rows_b = len(b)
    cols_b = len(b[0]) if b else 0
    out = []
    for arow in a:
        for brow_i in range(rows_b):
            out.append(
                tuple(
                    fld.mul(av, b[brow_i][j])
                    for av in arow
                    for j in range(cols_b)
                )
            )
    return tuple(out)


def mat_det(fld, a):
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    rows = [list(row) for row in a]
    det = fld.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != fld.zero()), None)
        if pivot is None:
            return fld.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = fld.neg(det)
        det = fld.mul(det, rows[col][col])
        inv = fld.inv(rows[col][col])
        for r in range(col + 1, n):
            factor = fld.mul(rows[r][col], inv)
            if factor == fld.zero():
                continue
            for j in range(col, n):
                rows[r][j] = fld.sub(rows[r][j], fld.mul(factor, rows[col][j]))
    return det


def mat_inv(fld, a) -> tuple[tuple, ...]:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse needs a square matrix")
    rows = [list(row) + list(erow) for row, erow in zip(a, mat_identity(fld, n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != fld.zero()), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = fld.inv(rows[col][col])
        rows[col] = [fld.mul(inv, v) for v in rows[col]]
        for r in range(n):
            if r == col or rows[r][col] == fld.zero():
                continue
            factor = rows[r][col]
            rows[r] = [
                fld.sub(v, fld.mul(factor, w)) for v, w in zip(rows[r], rows[col])
            ]
    return tuple(tuple(row[n:]) for row in rows)


def mat_to_json(fld, a) -> list:
    return [[fld.to_json(v) for v in row] for row in a]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups with element arithmetic


@dataclass(frozen=True)
class AbGroup:
    """Elements of ``Z^rank + Z/d_1 + ...`` as coordinate tuples.

    Free coordinates come first, then one coordinate per invariant factor,
    reduced to canonical residues.  The invariant factors must form a
    divisibility chain so equality of groups is equality of invariants.

    >>> g = AbGroup(AbelianInvariants(1, (4,)))
    >>> g.add((2, 3), (1, 2))
    (3, 1)
    """

    invariants: AbelianInvariants

    def __post_init__(self):
        torsion = self.invariants.torsion
        for d in torsion:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def rank(self) -> int:
        return self.invariants.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants.torsion

    @property
    def ncoords(self) -> int:
        return self.rank + len(self.torsion)

    def normalize(self, coords) -> tuple[int, ...]:
        coords = tuple(int(v) for v in coords)
        if len(coords) != self.ncoords:
            raise ValueError(
                f"expected {self.ncoords} coordinates, got {len(coords)}"
            )
        free = coords[: self.rank]
        tors = tuple(v % d for v, d in zip(coords[self.rank :], self.torsion))
        return free + tors

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ncoords

    def generator(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.ncoords:
            raise ValueError(f"no generator {i}")
        return tuple(1 if j == i else 0 for j in range(self.ncoords))

    def generators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.generator(i) for i in range(self.ncoords))

    def generator_order(self, i: int) -> int | None:
        if i < self.rank:
            return None
        return self.torsion[i - self.rank]

    def add(self, a, b) -> tuple[int, ...]:
        a, b = self.normalize(a), self.normalize(b)
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a) -> tuple[int, ...]:
        return self.normalize(tuple(-x for x in self.normalize(a)))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return self.normalize(tuple(k * x for x in self.normalize(a)))

    def order(self) -> int | None:
        if self.rank:
            return None
        return math.prod(self.torsion)

    def element_order(self, a) -> int | None:
        a = self.normalize(a)
        if any(a[: self.rank]):
            return None
        out = 1
        for v, d in zip(a[self.rank :], self.torsion):
            out = math.lcm(out, d // math.gcd(d, v))
        return out

    def torsion_elements(self):
        """All elements of the torsion subgroup (free coordinates zero)."""
        for tail in itertools.product(*(range(d) for d in self.torsion)):
            yield (0,) * self.rank + tail

    def elements(self):
        if self.rank:
            raise ValueError("infinite group")
        return self.torsion_elements()


def coords_from_pairs(pairs, group: AbGroup) -> tuple[int, ...]:
    """Convert self-describing ``(value, modulus)`` pairs to group coordinates.

    The pairs list torsion coordinates (modulus >= 2) before free ones
    (modulus 0); coordinate tuples put free parts first.
    """
    free = [v for v, d in pairs if d == 0]
    tors = [(v, d) for v, d in pairs if d != 0]
    if len(free) != group.rank or tuple(d for _, d in tors) != group.torsion:
        raise ValueError("coordinate shape does not match the group")
    return group.normalize(tuple(free) + tuple(v for v, _ in tors))


# ---------------------------------------------------------------------------
# Picard data and the k-invariant


@dataclass(frozen=True)
class PicardData:
    """Object classes, unit automorphisms, and the symmetry table.

    ``c_table[i][j]`` is the class in ``pi1`` of the braiding on the i-th and
    j-th generators of ``pi0``; the table extends biadditively, which is
    well-defined exactly when each entry is killed by its generators' orders.
    ``h_table`` optionally lists associator values as ``(x, y, z, value)``
    coordinate tuples; entries absent from the table are zero.
    """

    pi0: AbGroup
    pi1: AbGroup
    c_table: tuple[tuple[tuple[int, ...], ...], ...]
    h_table: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...] = ()

    def __post_init__(self):
        n = self.pi0.ncoords
        if len(self.c_table) != n or any(len(row) != n for row in self.c_table):
            raise ValueError("symmetry table must be square over the pi0 generators")
        table = tuple(
            tuple(self.pi1.normalize(v) for v in row) for row in self.c_table
        )
        object.__setattr__(self, "c_table", table)
        for i in range(n):
            for j in range(n):
                if self.pi1.add(table[i][j], table[j][i]) != self.pi1.zero():
                    raise ValueError(
                        f"symmetry table is not antisymmetric at ({i}, {j})"
                    )
                d = self.pi0.generator_order(i)
                if d is not None and self.pi1.scale(d, table[i][j]) != self.pi1.zero():
                    raise ValueError(
                        f"entry ({i}, {j}) is not killed by the generator order {d}"
                    )
        object.__setattr__(self, "h_table", self._normalized_h(self.h_table))
        self._validate_h()

    def _normalized_h(self, entries):
        out = []
        for x, y, z, v in entries:
            out.append(
                (
                    self.pi0.normalize(x),
                    self.pi0.normalize(y),
                    self.pi0.normalize(z),
                    self.pi1.normalize(v),
                )
            )
        return tuple(sorted(out))

    def _validate_h(self):
        if not self.h_table:
            return
        zero0, zero1 = self.pi0.zero(), self.pi1.zero()
        lookup = {}
        for x, y, z, v in self.h_table:
            if (x, y, z) in lookup:
                raise ValueError("duplicate associator entry")
            lookup[(x, y, z)] = v
            if zero0 in (x, y, z) and v != zero1:
                raise ValueError("associator must vanish on unit arguments")
        order = self.pi0.order()
        if order is None or order > 16:
            raise ValueError(
                "nonzero associator tables are only supported on groups of order <= 16"
            )
        elems = list(self.pi0.elements())
        h = lambda x, y, z: lookup.get((x, y, z), zero1)
        add0 = self.pi0.add
        for w, x, y, z in itertools.product(elems, repeat=4):
            total = h(x, y, z)
            total = self.pi1.sub(total, h(add0(w, x), y, z))
            total = self.pi1.add(total, h(w, add0(x, y), z))
            total = self.pi1.sub(total, h(w, x, add0(y, z)))
            total = self.pi1.add(total, h(w, x, y))
            if total != zero1:
                raise ValueError("associator table fails the cocycle identity")

    def c_of(self, x, y) -> tuple[int, ...]:
        """Biadditive extension of the symmetry table to arbitrary elements."""
        x = self.pi0.normalize(x)
        y = self.pi0.normalize(y)
        out = self.pi1.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                out = self.pi1.add(out, self.pi1.scale(xi * yj, self.c_table[i][j]))
        return out

    def h_of(self, x, y, z) -> tuple[int, ...]:
        key = (self.pi0.normalize(x), self.pi0.normalize(y), self.pi0.normalize(z))
        for hx, hy, hz, v in self.h_table:
            if (hx, hy, hz) == key:
                return v
        return self.pi1.zero()


def picard(pi0: AbelianInvariants, pi1: AbelianInvariants, c_rows, h_rows=()) -> PicardData:
    """Build PicardData from invariants and a generator-indexed symmetry table."""
    g0, g1 = AbGroup(pi0), AbGroup(pi1)
    table = tuple(tuple(tuple(v) for v in row) for row in c_rows)
    h = tuple((tuple(x), tuple(y), tuple(z), tuple(v)) for x, y, z, v in h_rows)
    return PicardData(g0, g1, table, h)


def k_invariant(p: PicardData, x) -> tuple[int, ...]:
    """Class of the self-braiding on x; depends only on x mod 2.

    The mod-2 factorization is rechecked on the spot: antisymmetry makes the
    diagonal additive, so shifting x by doubled elements cannot move it.
    """
    x = p.pi0.normalize(x)
    value = p.c_of(x, x)
    probes = list(p.pi0.generators()) + [x]
    order = p.pi0.order()
    if order is not None and order <= 32:
        probes = list(p.pi0.elements())
    for y in probes:
        shifted = p.pi0.add(x, p.pi0.scale(2, y))
        if p.c_of(shifted, shifted) != value:
            raise AssertionError("k-invariant failed to factor through x mod 2")
    return value


# -- constructors -----------------------------------------------------------


def units_invariants(p: int) -> AbelianInvariants:
    """The multiplicative group of the field with p elements, additively."""
    _check_prime(p)
    if p == 2:
        return AbelianInvariants(0, ())
    return AbelianInvariants(0, (p - 1,))


def minus_one_class(p: int) -> tuple[int, ...]:
    """Coordinates of -1 in the cyclic group of units.

    Any generator g of the units has g^((p-1)/2) = -1 for odd p, so the
    class is independent of which generator presents the group.
    """
    _check_prime(p)
    if p == 2:
        return ()
    return ((p - 1) // 2,)


def lines_picard(p: int) -> PicardData:
    """Invertible vector spaces over the field with p elements.

    Every line is isomorphic to the unit, so the object group is trivial and
    the k-invariant vanishes identically.
    """
    return picard(AbelianInvariants(0, ()), units_invariants(p), ())


def graded_lines_picard(p: int, twisted: bool = True) -> PicardData:
    """Graded lines over the field with p elements.

    The object group is Z/2 by degree.  With ``twisted`` the symmetry swaps
    two odd lines at the cost of a sign, so the k-invariant of the odd class
    is -1; untwisted graded lines keep the plain swap and k = 0.  The two
    agree exactly when -1 = 1, that is in characteristic 2.
    """
    value = minus_one_class(p) if twisted else AbGroup(units_invariants(p)).zero()
    return picard(AbelianInvariants(0, (2,)), units_invariants(p), ((value,),))


@dataclass(frozen=True)
class DerivedPicard:
    """Picard data computed from a model, with the derivation spelled out."""

    data: PicardData
    k_class: tuple[int, ...]
    derivation: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "pi0": self.data.pi0.invariants.to_json(),
            "pi1": self.data.pi1.invariants.to_json(),
            "k": list(self.k_class),
            "derivation": list(self.derivation),
        }


def cob1_picard(max_points: int = 8) -> DerivedPicard:
    """Picard data of the localized 1-dimensional cobordism category.

    The groups come from the truncated planar localization.  The k-invariant
    is the class of the swap on two points; it is computed two ways rather
    than asserted.  First, the swap composes with the cup to the cup itself
    (as abstract cobordisms both are a single arc with the same endpoints),
    so transporting it along the cup gives the loop cap after swap after cup
    which is literally the same closed diagram as cap after cup, hence class
    difference zero.  Second, antisymmetry of the symmetry table forces
    2k = 0, and the automorphism group is torsion-free.
    """
    data = planar_localization_data(max_points)
    if data.pi0 != AbelianInvariants(0, (2,)):
        raise ValueError(
            f"expected two object classes, found {data.pi0.describe()}"
        )
    pi1 = AbGroup(data.pi1)
    circle = coords_from_pairs(data.circle_class(), pi1)

    swap = matching(2, 2, [(0, 3), (1, 2)])
    cup = cup_matching()
    cap = cap_matching()
    swapped_cup = compose_abstract(cup, swap)
    absorbed = swapped_cup == cup
    loop_swapped = compose_abstract(swapped_cup, cap)
    loop_plain = compose_abstract(cup, cap)
    diff = loop_swapped.circles - loop_plain.circles
    k = pi1.scale(diff, circle)

    derivation = [
        "swap absorption: compose(cup, swap) == cup is "
        f"{absorbed} (a single arc either way)",
        "transport along the cup: cap.swap.cup and cap.cup close to "
        f"{loop_swapped.circles} and {loop_plain.circles} circles, "
        f"so k = {diff} * [circle] = {list(k)}",
    ]
    if not absorbed:
        raise AssertionError("swap failed to absorb into the cup")
    if not data.pi1.torsion:
        derivation.append(
            "cross-check: antisymmetry forces 2k = 0 and "
            f"{data.pi1.describe()} is torsion-free, so k = 0"
        )
        if pi1.scale(2, k) != pi1.zero() or k != pi1.zero():
            raise AssertionError("torsion-free cross-check contradicts transport")

    picard_data = PicardData(AbGroup(data.pi0), pi1, ((k,),))
    return DerivedPicard(picard_data, k, tuple(derivation))


# -- equivalence ------------------------------------------------------------


def _iso_candidates(a: AbGroup, b: AbGroup, bound: int) -> list[tuple[tuple[int, ...], ...]]:
    """Generator-image tuples defining isomorphisms a -> b.

    Torsion generators range over the full torsion subgroup; free generator
    images range over signed free generators shifted by torsion.  That family
    is complete for free rank at most 1 (an isomorphism must induce one on
    the free quotients, and Aut(Z) = {1, -1}); higher rank is refused rather
    than searched incompletely.
    """
    if a.rank > 1:
        raise ResourceLimitExceeded(
            f"free rank {a.rank} is above the searched image family"
        )
    torsion_elems = list(b.torsion_elements())
    per_gen: list[list[tuple[int, ...]]] = []
    for i in range(a.ncoords):
        d = a.generator_order(i)
        if d is None:
            images = [
                b.add(b.scale(s, b.generator(f)), t)
                for s in (1, -1)
                for f in range(b.rank)
                for t in torsion_elems
            ]
        else:
            images = [t for t in torsion_elems if b.scale(d, t) == b.zero()]
        per_gen.append(images)
    combos = math.prod(len(c) for c in per_gen) if per_gen else 1
    if combos > bound:
        raise ResourceLimitExceeded(
            f"{combos} generator-image combinations exceed the bound {bound}"
        )
    relation_rows = [
        [d if j == b.rank + jj else 0 for j in range(b.ncoords)]
        for jj, d in enumerate(b.torsion)
    ]
    out = []
    for images in itertools.product(*per_gen) if per_gen else [()]:
        rows = [list(img) for img in images] + [list(r) for r in relation_rows]
        if b.ncoords == 0 or quotient_group(rows, b.ncoords)[0].is_trivial:
            out.append(images)
    return out


def _apply_hom(b: AbGroup, images, x) -> tuple[int, ...]:
    out = b.zero()
    for xi, img in zip(x, images):
        if xi:
            out = b.add(out, b.scale(xi, img))
    return out


def picard_equivalent(p: PicardData, q: PicardData, search_bound: int = 20000) -> bool:
    """Whether two Picard data present equivalent symmetric monoidal groupoids.

    True exactly when isomorphisms of the two group pairs exist that
    intertwine the k-invariant.  Antisymmetry makes the k-invariant additive,
    so checking it on generators suffices.  The search enumerates generator
    images and raises ResourceLimitExceeded beyond ``search_bound``.
    """
    if p.pi0.invariants != q.pi0.invariants:
        return False
    if p.pi1.invariants != q.pi1.invariants:
        return False
    cands0 = _iso_candidates(p.pi0, q.pi0, search_bound)
    cands1 = _iso_candidates(p.pi1, q.pi1, search_bound)
    if len(cands0) * len(cands1) > search_bound:
        raise ResourceLimitExceeded(
            f"{len(cands0)} x {len(cands1)} isomorphism pairs exceed the bound"
        )
    gens = p.pi0.generators()
    k_values = [p.c_of(g, g) for g in gens]
    for phi0 in cands0:
        for phi1 in cands1:
            if all(
                _apply_hom(q.pi1, phi1, kv) == q.c_of(img, img)
                for kv, img in zip(k_values, phi0)
            ):
                return True
    return False


# -- JSON -------------------------------------------------------------------


def invariants_from_json(data: dict) -> AbelianInvariants:
    return AbelianInvariants(int(data["rank"]), tuple(int(d) for d in data["torsion"]))


def picard_to_json(p: PicardData) -> dict:
    return {
        "pi0": p.pi0.invariants.to_json(),
        "pi1": p.pi1.invariants.to_json(),
        "c": [[list(v) for v in row] for row in p.c_table],
        "h": [[list(x), list(y), list(z), list(v)] for x, y, z, v in p.h_table],
    }


def picard_from_json(data: dict) -> PicardData:
    return picard(
        invariants_from_json(data["pi0"]),
        invariants_from_json(data["pi1"]),
        [[tuple(v) for v in row] for row in data["c"]],
        [tuple(tuple(part) for part in entry) for entry in data.get("h", [])],
    )


# ---------------------------------------------------------------------------
# One-dimensional field theories from a symmetric pairing


@dataclass(frozen=True)
class FrobeniusDatum:
    """A symmetric pairing on a finite-dimensional space over an exact field.

    ``pairing`` is the tensor the cup inserts; the theory extends to caps
    exactly when it is nondegenerate.
    """

    field: RationalField | PrimeField
    dim: int
    pairing: tuple[tuple, ...]

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.pairing) != self.dim or any(
            len(row) != self.dim for row in self.pairing
        ):
            raise ValueError("pairing must be a dim x dim matrix")
        for i in range(self.dim):
            for j in range(self.dim):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise ValueError("pairing must be symmetric")


def frobenius(field, rows) -> FrobeniusDatum:
    mat = mat_from_rows(field, rows)
    return FrobeniusDatum(field, len(mat), mat)


def frobenius_from_json(data: dict) -> FrobeniusDatum:
    return frobenius(field_from_spec(data["field"]), data["pairing"])


def frobenius_to_json(t: FrobeniusDatum) -> dict:
    return {
        "field": t.field.name,
        "dim": t.dim,
        "pairing": mat_to_json(t.field, t.pairing),
    }


def _pack(indices, dim: int) -> int:
    out = 0
    for v in indices:
        out = out * dim + v
    return out


def evaluate_restricted(theory: FrobeniusDatum, r: RestrictedMorphism) -> tuple[tuple, ...]:
    """Matrix of a cap-free cobordism: X^(tensor m) -> X^(tensor n).

    Rows are indexed by outgoing leg values packed most significant first,
    columns by incoming values.  Through-strands copy indices, cup pairs
    insert the pairing; with no caps each row meets exactly one column.
    """
    fld, d, b = theory.field, theory.dim, theory.pairing
    rows, cols = d**r.n, d**r.m
    out = [[fld.zero()] * cols for _ in range(rows)]
    for legs in itertools.product(range(d), repeat=r.n):
        factor = fld.one()
        for a, bb in r.pairs:
            factor = fld.mul(factor, b[legs[a]][legs[bb]])
        incoming = tuple(legs[v] for v in r.injection)
        row, col = _pack(legs, d), _pack(incoming, d)
        out[row][col] = fld.add(out[row][col], factor)
    return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class FullEvaluator:
    """Evaluator for arbitrary matchings once the pairing is invertible."""

    theory: FrobeniusDatum
    cap_matrix: tuple[tuple, ...]

    def circle_value(self):
        """Pairing contracted with its inverse: the dimension in the field."""
        fld = self.theory.field
        out = fld.zero()
        for brow, crow in zip(self.theory.pairing, self.cap_matrix):
            for bv, cv in zip(brow, crow):
                out = fld.add(out, fld.mul(bv, cv))
        return out

    def evaluate(self, w: Matching1D) -> tuple[tuple, ...]:
        fld, d, b = self.theory.field, self.theory.dim, self.theory.pairing
        caps = [(x, y) for x, y in w.pairs if y < w.m]
        throughs = [(x, y - w.m) for x, y in w.pairs if x < w.m <= y]
        cups = [(x - w.m, y - w.m) for x, y in w.pairs if x >= w.m]
        circ = fld.one()
        for _ in range(w.circles):
            circ = fld.mul(circ, self.circle_value())
        out = [[fld.zero()] * d**w.m for _ in range(d**w.n)]
        for incoming in itertools.product(range(d), repeat=w.m):
            base = circ
            for x, y in caps:
                base = fld.mul(base, self.cap_matrix[incoming[x]][incoming[y]])
            col = _pack(incoming, d)
            legs = [0] * w.n
            for x, y in throughs:
                legs[y] = incoming[x]
            for values in itertools.product(range(d), repeat=2 * len(cups)):
                factor = base
                for k, (x, y) in enumerate(cups):
                    legs[x], legs[y] = values[2 * k], values[2 * k + 1]
                    factor = fld.mul(factor, b[legs[x]][legs[y]])
                row = _pack(legs, d)
                out[row][col] = fld.add(out[row][col], factor)
        return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class Extension:
    """Verdict of the extension criterion, with the evaluator when it holds."""

    extends: bool
    reason: str
    evaluator: FullEvaluator | None


def extend_to_full(theory: FrobeniusDatum) -> Extension:
    """Extend to caps exactly when the pairing is nondegenerate.

    The cap is the matrix inverse of the pairing, which makes the zig-zag
    composites collapse to identities; a degenerate pairing admits no cap at
    all because the zig-zag forces the pairing's adjoint to be invertible.
    """
    fld = theory.field
    det = mat_det(fld, theory.pairing)
    if det == fld.zero():
        return Extension(False, "pairing is degenerate (determinant 0)", None)
    cap = mat_inv(fld, theory.pairing)
    return Extension(True, "pairing is nondegenerate", FullEvaluator(theory, cap))


def invertibility_check(evaluator: FullEvaluator, samples) -> bool:
    """Whether the theory lands in invertible matrices on invertible objects.

    Objects evaluate to tensor powers of the underlying space, which are
    invertible exactly in dimension 1; morphism matrices must be square and
    of nonzero determinant.
    """
    fld = evaluator.theory.field
    if evaluator.theory.dim != 1:
        return False
    for w in samples:
        if w.m != w.n:
            return False
        if mat_det(fld, evaluator.evaluate(w)) == fld.zero():
            return False
    return True
