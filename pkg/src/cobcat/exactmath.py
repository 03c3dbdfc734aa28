"""Exact integer linear algebra and finitely presented group utilities.

Everything works with arbitrary-precision Python integers; no floats and no
modular shortcuts.  Main entry points:

    smith_normal_form       diagonalize an integer matrix by unimodular row
                            and column operations, returning the transforms
    AbelianInvariants       canonical form (free rank, invariant factors) of
                            a finitely generated abelian group
    GroupPresentation       relator words over named generators
    abelianize              invariants of the abelianization of a presentation
    simplify_presentation   bounded, deterministic Tietze simplification
    UnionFind               growable disjoint-set forest

>>> d, left, right = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
>>> d
[1, 6]
>>> abelianize(GroupPresentation(("a",), ((1, 1),)))
AbelianInvariants(rank=0, torsion=(2,))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix with row-major entries.

    >>> m = IntMatrix.from_rows([[1, 2], [3, 4]])
    >>> m.shape
    (2, 2)
    >>> m.entry(1, 0)
    3
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(int(v) for v in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(data)}"
            )
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, [v for row in rows for v in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self._data[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self._data[i * c : (i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix.from_rows({self.to_rows()!r})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    >>> determinant(IntMatrix.from_rows([[2, 1], [1, 1]]))
    1
    """
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _find_pivot(a: list[list[int]], t: int, rows: int, cols: int):
    # Smallest nonzero absolute value; ties broken by row-major position.
    best = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            v = ai[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def smith_normal_form(
    m: IntMatrix,
) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Diagonalize ``m`` as ``left * m * right`` with a divisibility chain.

    Returns ``(diagonal, left, right)`` where ``left`` and ``right`` are
    unimodular, the diagonal entries are nonnegative, each divides the next,
    and zeros come last.  The pivot at each step is the entry of smallest
    nonzero absolute value in the remaining submatrix, ties broken in
    row-major order, which makes the run fully deterministic.

    >>> d, L, R = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    >>> d
    [1, 6]
    >>> L.mul(IntMatrix.from_rows([[2, 0], [0, 3]])).mul(R).to_rows()
    [[1, 0], [0, 6]]
    >>> smith_normal_form(IntMatrix.zeros(2, 2))[0]
    [0, 0]
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    left = IntMatrix.identity(rows).to_rows()
    right = IntMatrix.identity(cols).to_rows()

    def row_swap(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        left[i], left[k] = left[k], left[i]

    def row_sub(i: int, k: int, q: int) -> None:
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            left[i] = [x - q * y for x, y in zip(left[i], left[k])]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    def col_swap(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in right:
            row[j], row[k] = row[k], row[j]

    def col_sub(j: int, k: int, q: int) -> None:
        if q:
            for row in a:
                row[j] -= q * row[k]
            for row in right:
                row[j] -= q * row[k]

    t = 0
    while t < rows and t < cols:
        pos = _find_pivot(a, t, rows, cols)
        if pos is None:
            break
        while True:
            pi, pj = pos
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            if a[t][t] < 0:
                row_negate(t)
            pivot = a[t][t]
            # One reduction sweep; leftover residues become the next pivot.
            for i in range(rows):
                if i != t and a[i][t]:
                    row_sub(i, t, a[i][t] // pivot)
            for j in range(cols):
                if j != t and a[t][j]:
                    col_sub(j, t, a[t][j] // pivot)
            if any(a[i][t] for i in range(rows) if i != t) or any(
                a[t][j] for j in range(cols) if j != t
            ):
                pos = _find_pivot(a, t, rows, cols)
                continue
            # Pivot must divide every remaining entry; if not, fold the
            # offending row in and keep reducing.
            bad = None
            for i in range(t + 1, rows):
                ai = a[i]
                for j in range(t + 1, cols):
                    if ai[j] % pivot:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_sub(t, bad, -1)
            pos = (t, t)
        t += 1

    diag = [a[k][k] for k in range(min(rows, cols))]
    return diag, IntMatrix.from_rows(left), IntMatrix.from_rows(right)


def matrix_rank(m: IntMatrix) -> int:
    """Rank over the rationals (count of nonzero Smith diagonal entries)."""
    diag, _, _ = smith_normal_form(m)
    return sum(1 for d in diag if d)


@dataclass(frozen=True)
class AbelianInvariants:
    """Canonical form of a finitely generated abelian group.

    ``rank`` counts free summands; ``torsion`` lists invariant factors, each
    at least 2 and each dividing the next.

    >>> AbelianInvariants(1, (2, 6)).describe()
    'Z + Z/2 + Z/6'
    >>> AbelianInvariants(0, ()).is_trivial
    True
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for x, y in zip(self.torsion, self.torsion[1:]):
            if y % x:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def describe(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_relation_diagonal(
        cls, diag: Iterable[int], n_generators: int
    ) -> "AbelianInvariants":
        """Group ``Z^n / relations`` from the Smith diagonal of the relation
        matrix (relators as rows over ``n_generators`` columns)."""
        diag = list(diag)
        nonzero = [d for d in diag if d]
        return cls(n_generators - len(nonzero), tuple(d for d in nonzero if d > 1))


Word = tuple[int, ...]  # nonzero 1-based generator indices, sign = inverse


def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs.

    >>> free_reduce((1, 2, -2, -1, 3))
    (3,)
    """
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse_word(word: Iterable[int]) -> Word:
    return tuple(-letter for letter in reversed(tuple(word)))


@dataclass(frozen=True)
class GroupPresentation:
    """Finitely presented group: generator names plus relator words.

    Relator letters are nonzero 1-based indices into ``generators``; a
    negative letter is the inverse of the corresponding generator.

    >>> p = GroupPresentation(("a", "b"), ((1, 2, -1, -2),))
    >>> p.render_word((1, -2))
    'a*b^-1'
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        n = len(self.generators)
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > n:
                    raise ValueError(f"letter {letter} out of range")

    def word_from_pairs(self, pairs: Iterable[tuple[str, int]]) -> Word:
        """Word from (generator name, exponent) pairs, exponents any ints."""
        index = {g: i + 1 for i, g in enumerate(self.generators)}
        out: list[int] = []
        for name, exp in pairs:
            if name not in index:
                raise ValueError(f"unknown generator {name!r}")
            letter = index[name] if exp > 0 else -index[name]
            out.extend([letter] * abs(exp))
        return tuple(out)

    def render_word(self, word: Iterable[int]) -> str:
        parts = []
        for letter in word:
            name = self.generators[abs(letter) - 1]
            parts.append(name if letter > 0 else f"{name}^-1")
        return "*".join(parts) if parts else "1"

    def exponent_matrix(self) -> IntMatrix:
        """Relators-by-generators matrix of exponent sums."""
        n = len(self.generators)
        rows = []
        for rel in self.relators:
            row = [0] * n
            for letter in rel:
                row[abs(letter) - 1] += 1 if letter > 0 else -1
            rows.append(row)
        if not rows:
            return IntMatrix.zeros(0, n)
        return IntMatrix.from_rows(rows)


def abelianize(p: GroupPresentation) -> AbelianInvariants:
    """Invariants of the abelianized presentation.

    Relators become rows of exponent sums; the Smith diagonal of that matrix
    gives the canonical decomposition.

    >>> abelianize(GroupPresentation(("a", "b"), ((1, 1), (2, 2, 2)))).describe()
    'Z/6'
    >>> abelianize(GroupPresentation(("a", "b"), ((1, 2, -1, -2),))).describe()
    'Z^2'
    """
    diag, _, _ = smith_normal_form(p.exponent_matrix())
    return AbelianInvariants.from_relation_diagonal(diag, len(p.generators))


def _canonical_relator(word: Word) -> Word:
    """Least rotation of the cyclically reduced word or its inverse.

    Ordered by generator index first, with positive letters preferred, so
    ``a*a`` wins over ``a^-1*a^-1``.
    """
    w = cyclic_reduce(word)
    if not w:
        return ()
    candidates = []
    for base in (w, inverse_word(w)):
        for s in range(len(base)):
            candidates.append(base[s:] + base[:s])
    return min(candidates, key=lambda c: tuple((abs(l), l < 0) for l in c))


def simplify_presentation(
    p: GroupPresentation, effort: int = 100
) -> GroupPresentation:
    """Bounded Tietze simplification; best effort, deterministic.

    Each pass freely and cyclically reduces relators, removes duplicates,
    then performs at most one generator elimination: a length-1 relator kills
    its generator, and a length-2 relator on two distinct generators
    substitutes the later-indexed one.  ``effort`` bounds the number of
    passes; 0 returns the presentation unchanged.  The simplified group is
    isomorphic to the input (only Tietze moves are used).

    >>> p = GroupPresentation(("a", "b"), ((1, 2),))
    >>> simplify_presentation(p).generators
    ('a',)
    >>> simplify_presentation(p, effort=0) == p
    True
    """
    if effort <= 0:
        return p
    gens = list(p.generators)
    relators = [tuple(r) for r in p.relators]

    def drop_generator(victim: int, replacement: Word) -> None:
        # victim is 1-based; replacement is a word in the *old* indexing.
        nonlocal gens, relators
        new_rels = []
        for rel in relators:
            out: list[int] = []
            for letter in rel:
                if abs(letter) == victim:
                    out.extend(replacement if letter > 0 else inverse_word(replacement))
                else:
                    out.append(letter)
            new_rels.append(tuple(out))
        remap = {}
        shift = 0
        for i in range(1, len(gens) + 1):
            if i == victim:
                shift = 1
                continue
            remap[i] = i - shift
        gens = [g for i, g in enumerate(gens, start=1) if i != victim]
        relators = [
            tuple((1 if l > 0 else -1) * remap[abs(l)] for l in rel)
            for rel in new_rels
        ]

    for _ in range(effort):
        before = (tuple(gens), tuple(relators))
        seen = set()
        cleaned = []
        for rel in relators:
            canon = _canonical_relator(rel)
            if canon and canon not in seen:
                seen.add(canon)
                cleaned.append(canon)
        relators = cleaned

        elimination = None
        for rel in relators:
            if len(rel) == 1:
                elimination = (abs(rel[0]), ())
                break
            if len(rel) == 2 and abs(rel[0]) != abs(rel[1]):
                # x^e y^f = 1, eliminate the later generator of the two.
                a, b = rel
                if abs(a) < abs(b):
                    keep, victim = a, b
                else:
                    keep, victim = b, a
                # victim^f = keep^-e  =>  victim = keep^(-e*f)
                rep_letter = -keep if victim > 0 else keep
                elimination = (abs(victim), (rep_letter,))
                break
        if elimination is not None:
            drop_generator(*elimination)
        if (tuple(gens), tuple(relators)) == before:
            break

    return GroupPresentation(tuple(gens), tuple(relators))


class UnionFind:
    """Disjoint-set forest with path compression and union by rank.

    >>> uf = UnionFind(3)
    >>> uf.union(0, 2)
    True
    >>> uf.find(0) == uf.find(2)
    True
    >>> uf.groups()
    [[0, 2], [1]]
    """

    def __init__(self, n: int = 0):
        self.parent = list(range(n))
        self.rank = [0] * n

    def make_set(self) -> int:
        self.parent.append(len(self.parent))
        self.rank.append(0)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True

    def groups(self) -> list[list[int]]:
        buckets: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            buckets.setdefault(self.find(x), []).append(x)
        return sorted(buckets.values())


def reduce_lattice_rows(vectors: Iterable[Sequence[int]], width: int) -> list[list[int]]:
    """Row-reduce an integer row family, preserving its row span over Z.

    Streams vectors into an echelon basis using only invertible integer row
    operations, so the returned rows span the same sublattice of Z^width.
    Useful for collapsing huge relator families before a Smith computation.
    """
    pivots: dict[int, list[int]] = {}
    for vec in vectors:
        v = list(vec)
        if len(v) != width:
            raise ValueError("vector width mismatch")
        col = 0
        while col < width:
            if v[col] == 0:
                col += 1
                continue
            if col not in pivots:
                if v[col] < 0:
                    v = [-x for x in v]
                pivots[col] = v
                break
            r = pivots[col]
            # Integer gcd dance between r and v at this column.
            while v[col]:
                q = r[col] // v[col]
                r = [x - q * y for x, y in zip(r, v)]
                r, v = v, r
            if r[col] < 0:
                r = [-x for x in r]
            pivots[col] = r
            # v now has a zero in this column; keep folding it rightward.
    return [pivots[c] for c in sorted(pivots)]


def quotient_group(
    relator_rows: Sequence[Sequence[int]], n_generators: int
) -> tuple[AbelianInvariants, list[list[tuple[int, int]]]]:
    """Z^n modulo the row span, with the image of each standard generator.

    Returns ``(invariants, classes)`` where ``classes[j]`` expresses the image
    of generator ``j`` as coordinates ``[(value, modulus), ...]`` over the
    canonical decomposition: modulus 0 marks a free coordinate, otherwise the
    value is reduced mod the invariant factor.
    """
    rows = reduce_lattice_rows(relator_rows, n_generators)
    if not rows:
        inv = AbelianInvariants(n_generators, ())
        classes = [
            [(1 if i == j else 0, 0) for i in range(n_generators)]
            for j in range(n_generators)
        ]
        return inv, classes
    a = IntMatrix.from_rows(rows).transpose()  # n x r, columns = relators
    diag, left, _ = smith_normal_form(a)
    inv = AbelianInvariants.from_relation_diagonal(diag, n_generators)
    moduli = []
    for i in range(n_generators):
        d = diag[i] if i < len(diag) else 0
        moduli.append(d)
    keep = [i for i, d in enumerate(moduli) if d != 1]
    classes = []
    lrows = left.to_rows()
    for j in range(n_generators):
        coord = []
        for i in keep:
            d = moduli[i]
            v = lrows[i][j]
            coord.append((v % d if d else v, d))
        classes.append(coord)
    return inv, classes


if __name__ == "__main__":
    import doctest

    doctest.testmod()
