"""Finite categories as explicit composition tables.

A :class:`FinCat` stores objects, morphisms with source and target, an
identity for each object, and a total composition table on composable pairs.
Object and morphism ids are opaque strings at the interface; internally
everything is indexed densely.  ``validate_category`` checks the axioms
exhaustively and returns a report of human-readable issues, empty when the
category is lawful.

The JSON wire format::

    {"objects": ["x", "y"],
     "morphisms": [{"id": "f", "src": "x", "tgt": "y"}, ...],
     "identities": {"x": "id_x", ...},
     "compose": [["f", "g", "h"], ...]}       # g after f equals h

Every composable pair must appear exactly once in "compose".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence


@dataclass(frozen=True)
class FinCat:
    """Finite category with dense integer indexing.

    ``objects`` and ``morphisms`` are id tuples; ``src``/``tgt`` give object
    indices per morphism; ``identity`` gives the identity morphism index per
    object; ``table`` maps composable index pairs ``(f, g)`` with
    ``f: x -> y`` and ``g: y -> z`` to the index of ``g after f``.

    Construction does not validate the axioms; call
    :func:`validate_category`, which builders and JSON loading do for you.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    table: Mapping[tuple[int, int], int]

    def object_index(self, obj: str) -> int:
        try:
            return self.objects.index(obj)
        except ValueError:
            raise ValueError(f"unknown object {obj!r}") from None

    def morphism_index(self, mor: str) -> int:
        try:
            return self.morphisms.index(mor)
        except ValueError:
            raise ValueError(f"unknown morphism {mor!r}") from None

    def compose(self, f: int, g: int) -> int:
        """Index of ``g after f`` for ``f: x -> y``, ``g: y -> z``."""
        try:
            return self.table[(f, g)]
        except KeyError:
            raise ValueError(
                f"morphisms {self.morphisms[f]!r} and {self.morphisms[g]!r} "
                "are not composable"
            ) from None

    def is_identity(self, f: int) -> bool:
        return self.identity[self.src[f]] == f

    def composable_pairs(self) -> Iterable[tuple[int, int]]:
        for f in range(len(self.morphisms)):
            for g in range(len(self.morphisms)):
                if self.tgt[f] == self.src[g]:
                    yield (f, g)

    def hom(self, x: int, y: int) -> list[int]:
        return [
            f
            for f in range(len(self.morphisms))
            if self.src[f] == x and self.tgt[f] == y
        ]


def build_category(
    objects: Sequence[str],
    morphisms: Sequence[tuple[str, str, str]],
    identities: Mapping[str, str],
    compose: Iterable[tuple[str, str, str]],
) -> FinCat:
    """Assemble and validate a category from id-level data.

    ``morphisms`` rows are ``(id, src, tgt)``; ``compose`` rows are
    ``(f, g, h)`` meaning ``g after f = h``.  Raises ``ValueError`` with the
    first validation issue if the result breaks an axiom.
    """
    objects = tuple(objects)
    obj_index = {o: i for i, o in enumerate(objects)}
    if len(obj_index) != len(objects):
        raise ValueError("duplicate object ids")
    mor_ids = tuple(m[0] for m in morphisms)
    mor_index = {m: i for i, m in enumerate(mor_ids)}
    if len(mor_index) != len(mor_ids):
        raise ValueError("duplicate morphism ids")
    src = []
    tgt = []
    for mid, s, t in morphisms:
        if s not in obj_index or t not in obj_index:
            raise ValueError(f"morphism {mid!r} references unknown object")
        src.append(obj_index[s])
        tgt.append(obj_index[t])
    ident = [-1] * len(objects)
    for obj, mid in identities.items():
        if obj not in obj_index:
            raise ValueError(f"identity given for unknown object {obj!r}")
        if mid not in mor_index:
            raise ValueError(f"identity {mid!r} is not a morphism")
        ident[obj_index[obj]] = mor_index[mid]
    table = {}
    for f, g, h in compose:
        for name in (f, g, h):
            if name not in mor_index:
                raise ValueError(f"compose row references unknown morphism {name!r}")
        key = (mor_index[f], mor_index[g])
        if key in table:
            raise ValueError(f"duplicate compose row for ({f!r}, {g!r})")
        table[key] = mor_index[h]
    cat = FinCat(
        objects,
        mor_ids,
        tuple(src),
        tuple(tgt),
        tuple(ident),
        table,
    )
    issues = validate_category(cat)
    if issues:
        raise ValueError(issues[0])
    return cat


def validate_category(c: FinCat) -> list[str]:
    """Exhaustive axiom check; returns human-readable issues, empty if lawful."""
    issues: list[str] = []
    n = len(c.morphisms)
    for x, i in enumerate(c.identity):
        if not (0 <= i < n):
            issues.append(f"object {c.objects[x]!r} has no identity morphism")
            continue
        if c.src[i] != x or c.tgt[i] != x:
            issues.append(
                f"identity of {c.objects[x]!r} is not an endomorphism of it"
            )
    composable = {(f, g) for f in range(n) for g in range(n) if c.tgt[f] == c.src[g]}
    for key in c.table:
        if key not in composable:
            f, g = key
            issues.append(
                f"table entry for non-composable pair ({c.morphisms[f]!r}, {c.morphisms[g]!r})"
            )
    for f, g in sorted(composable):
        if (f, g) not in c.table:
            issues.append(
                f"missing composite of {c.morphisms[f]!r} then {c.morphisms[g]!r}"
            )
            continue
        h = c.table[(f, g)]
        if not (0 <= h < n):
            issues.append(f"composite index out of range for pair ({f}, {g})")
            continue
        if c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
            issues.append(
                f"composite of {c.morphisms[f]!r} then {c.morphisms[g]!r} has wrong endpoints"
            )
    if issues:
        return issues
    for f in range(n):
        i_src = c.identity[c.src[f]]
        i_tgt = c.identity[c.tgt[f]]
        if c.table[(i_src, f)] != f:
            issues.append(f"left identity law fails at {c.morphisms[f]!r}")
        if c.table[(f, i_tgt)] != f:
            issues.append(f"right identity law fails at {c.morphisms[f]!r}")
    for f in range(n):
        for g in range(n):
            if c.tgt[f] != c.src[g]:
                continue
            fg = c.table[(f, g)]
            for h in range(n):
                if c.tgt[g] != c.src[h]:
                    continue
                gh = c.table[(g, h)]
                if c.table[(fg, h)] != c.table[(f, gh)]:
                    issues.append(
                        "associativity fails on "
                        f"({c.morphisms[f]!r}, {c.morphisms[g]!r}, {c.morphisms[h]!r})"
                    )
    return issues


def is_groupoid(c: FinCat) -> tuple[bool, dict[str, str] | None]:
    """Whether every morphism is invertible; returns the inverse table if so."""
    inverses: dict[str, str] = {}
    for f in range(len(c.morphisms)):
        inv = None
        for g in c.hom(c.tgt[f], c.src[f]):
            if (
                c.table[(f, g)] == c.identity[c.src[f]]
                and c.table[(g, f)] == c.identity[c.tgt[f]]
            ):
                inv = g
                break
        if inv is None:
            return False, None
        inverses[c.morphisms[f]] = c.morphisms[inv]
    return True, inverses


def product(c: FinCat, d: FinCat) -> FinCat:
    """Product category; ids are "(a,b)" pairs of the factor ids."""

    def pair(a: str, b: str) -> str:
        return f"({a},{b})"

    objects = [pair(a, b) for a in c.objects for b in d.objects]
    morphisms = [
        (pair(f, g), pair(c.objects[c.src[i]], d.objects[d.src[j]]),
         pair(c.objects[c.tgt[i]], d.objects[d.tgt[j]]))
        for i, f in enumerate(c.morphisms)
        for j, g in enumerate(d.morphisms)
    ]
    identities = {
        pair(a, b): pair(c.morphisms[c.identity[i]], d.morphisms[d.identity[j]])
        for i, a in enumerate(c.objects)
        for j, b in enumerate(d.objects)
    }
    compose = []
    for (f1, g1), h1 in c.table.items():
        for (f2, g2), h2 in d.table.items():
            compose.append(
                (
                    pair(c.morphisms[f1], d.morphisms[f2]),
                    pair(c.morphisms[g1], d.morphisms[g2]),
                    pair(c.morphisms[h1], d.morphisms[h2]),
                )
            )
    return build_category(objects, morphisms, identities, compose)


def disjoint_union(c: FinCat, d: FinCat, prefixes: tuple[str, str] = ("l:", "r:")) -> FinCat:
    """Coproduct category; ids get the given prefixes to stay unique."""
    lp, rp = prefixes
    objects = [lp + o for o in c.objects] + [rp + o for o in d.objects]
    morphisms = [
        (lp + m, lp + c.objects[c.src[i]], lp + c.objects[c.tgt[i]])
        for i, m in enumerate(c.morphisms)
    ] + [
        (rp + m, rp + d.objects[d.src[i]], rp + d.objects[d.tgt[i]])
        for i, m in enumerate(d.morphisms)
    ]
    identities = {
        lp + o: lp + c.morphisms[c.identity[i]] for i, o in enumerate(c.objects)
    }
    identities.update(
        {rp + o: rp + d.morphisms[d.identity[i]] for i, o in enumerate(d.objects)}
    )
    compose = [
        (lp + c.morphisms[f], lp + c.morphisms[g], lp + c.morphisms[h])
        for (f, g), h in c.table.items()
    ] + [
        (rp + d.morphisms[f], rp + d.morphisms[g], rp + d.morphisms[h])
        for (f, g), h in d.table.items()
    ]
    return build_category(objects, morphisms, identities, compose)


@dataclass(frozen=True)
class Functor:
    """Object and morphism maps between finite categories."""

    source: FinCat
    target: FinCat
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]


def check_functor(fun: Functor) -> list[str]:
    """Exhaustive functoriality check; empty report means lawful."""
    issues: list[str] = []
    c, d = fun.source, fun.target
    for obj in c.objects:
        if obj not in fun.object_map:
            issues.append(f"object {obj!r} has no image")
        elif fun.object_map[obj] not in d.objects:
            issues.append(f"object {obj!r} maps outside the target")
    for mor in c.morphisms:
        if mor not in fun.morphism_map:
            issues.append(f"morphism {mor!r} has no image")
        elif fun.morphism_map[mor] not in d.morphisms:
            issues.append(f"morphism {mor!r} maps outside the target")
    if issues:
        return issues
    omap = {c.object_index(o): d.object_index(v) for o, v in fun.object_map.items()}
    mmap = {
        c.morphism_index(m): d.morphism_index(v)
        for m, v in fun.morphism_map.items()
    }
    for f in range(len(c.morphisms)):
        if d.src[mmap[f]] != omap[c.src[f]] or d.tgt[mmap[f]] != omap[c.tgt[f]]:
            issues.append(f"image of {c.morphisms[f]!r} has wrong endpoints")
    for x in range(len(c.objects)):
        if mmap[c.identity[x]] != d.identity[omap[x]]:
            issues.append(f"identity of {c.objects[x]!r} not sent to an identity")
    for (f, g), h in c.table.items():
        image = d.table.get((mmap[f], mmap[g]))
        if image != mmap[h]:
            issues.append(
                f"composition not preserved on ({c.morphisms[f]!r}, {c.morphisms[g]!r})"
            )
    return issues


@dataclass(frozen=True)
class NatTrans:
    """Components indexed by source-category object ids."""

    source: Functor
    target: Functor
    components: Mapping[str, str]


def check_nat_trans(nt: NatTrans) -> list[str]:
    """Exhaustive naturality check; empty report means lawful."""
    issues: list[str] = []
    fun, gun = nt.source, nt.target
    if fun.source is not gun.source or fun.target is not gun.target:
        return ["the two functors do not share source and target"]
    c, d = fun.source, fun.target
    comp: dict[int, int] = {}
    for obj in c.objects:
        if obj not in nt.components:
            issues.append(f"object {obj!r} has no component")
            continue
        name = nt.components[obj]
        if name not in d.morphisms:
            issues.append(f"component at {obj!r} is not a target morphism")
            continue
        k = d.morphism_index(name)
        x = c.object_index(obj)
        if d.src[k] != d.object_index(fun.object_map[obj]) or d.tgt[
            k
        ] != d.object_index(gun.object_map[obj]):
            issues.append(f"component at {obj!r} has wrong endpoints")
        comp[x] = k
    if issues:
        return issues
    for f in range(len(c.morphisms)):
        x, y = c.src[f], c.tgt[f]
        ff = d.morphism_index(fun.morphism_map[c.morphisms[f]])
        gf = d.morphism_index(gun.morphism_map[c.morphisms[f]])
        left = d.table[(ff, comp[y])]
        right = d.table[(comp[x], gf)]
        if left != right:
            issues.append(f"naturality square fails at {c.morphisms[f]!r}")
    return issues


def to_json(c: FinCat) -> dict:
    """Wire format dictionary; deterministic ordering throughout."""
    return {
        "objects": list(c.objects),
        "morphisms": [
            {"id": m, "src": c.objects[c.src[i]], "tgt": c.objects[c.tgt[i]]}
            for i, m in enumerate(c.morphisms)
        ],
        "identities": {
            obj: c.morphisms[c.identity[i]] for i, obj in enumerate(c.objects)
        },
        "compose": sorted(
            [c.morphisms[f], c.morphisms[g], c.morphisms[h]]
            for (f, g), h in c.table.items()
        ),
    }


def from_json(data: dict) -> FinCat:
    """Parse and validate the wire format; raises ValueError on any defect."""
    try:
        objects = list(data["objects"])
        morphisms = [(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]]
        identities = dict(data["identities"])
        compose = [tuple(row) for row in data["compose"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed category JSON: {exc}") from None
    for row in compose:
        if len(row) != 3:
            raise ValueError("compose rows must be [f, g, h] triples")
    return build_category(objects, morphisms, identities, compose)


# Builders for the standard small categories used across the test suite and
# the command-line examples.


def terminal_category() -> FinCat:
    return build_category(
        ["*"], [("id_*", "*", "*")], {"*": "id_*"}, [("id_*", "id_*", "id_*")]
    )


def interval_category() -> FinCat:
    """Two objects, one arrow between them; has a terminal object."""
    return build_category(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("f", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        [
            ("id_a", "id_a", "id_a"),
            ("id_b", "id_b", "id_b"),
            ("id_a", "f", "f"),
            ("f", "id_b", "f"),
        ],
    )


def parallel_pair() -> FinCat:
    """Two objects with two parallel arrows; its nerve is a circle."""
    return build_category(
        ["a", "b"],
        [
            ("id_a", "a", "a"),
            ("id_b", "b", "b"),
            ("f", "a", "b"),
            ("g", "a", "b"),
        ],
        {"a": "id_a", "b": "id_b"},
        [
            ("id_a", "id_a", "id_a"),
            ("id_b", "id_b", "id_b"),
            ("id_a", "f", "f"),
            ("f", "id_b", "f"),
            ("id_a", "g", "g"),
            ("g", "id_b", "g"),
        ],
    )


def cyclic_group_category(n: int) -> FinCat:
    """Z/n as a one-object groupoid; morphism ids are "r0".."r{n-1}"."""
    if n < 1:
        raise ValueError("n must be positive")
    objects = ["*"]
    morphisms = [(f"r{k}", "*", "*") for k in range(n)]
    identities = {"*": "r0"}
    compose = [
        (f"r{a}", f"r{b}", f"r{(a + b) % n}") for a in range(n) for b in range(n)
    ]
    return build_category(objects, morphisms, identities, compose)


def poset_category(elements: Sequence[str], leq: Callable[[str, str], bool]) -> FinCat:
    """Category of a finite poset: one morphism per related pair."""
    objects = list(elements)
    morphisms = []
    identities = {}
    for a in objects:
        for b in objects:
            if leq(a, b):
                mid = f"id_{a}" if a == b else f"{a}<{b}"
                morphisms.append((mid, a, b))
                if a == b:
                    identities[a] = mid
    by_pair = {(s, t): mid for mid, s, t in morphisms}
    compose = []
    for f, fs, ft in morphisms:
        for g, gs, gt in morphisms:
            if ft == gs:
                compose.append((f, g, by_pair[(fs, gt)]))
    return build_category(objects, morphisms, identities, compose)


def subset_poset_category(n: int = 4) -> FinCat:
    """Nonempty proper subsets of an n-element set, ordered by inclusion.

    For n = 4 the nerve of this category is a model of the 2-sphere (it is
    the barycentric subdivision of the boundary of a tetrahedron).
    """
    universe = list(range(n))
    subsets = []
    for mask in range(1, (1 << n) - 1):
        subsets.append(frozenset(i for i in universe if mask & (1 << i)))
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    names = {s: "".join(str(i) for i in sorted(s)) for s in subsets}
    by_name = {v: k for k, v in names.items()}
    return poset_category(
        [names[s] for s in subsets],
        lambda a, b: by_name[a] <= by_name[b],
    )
