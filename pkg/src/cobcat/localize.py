"""Universal groupoid data: automorphism presentations and class groups.

Inverting every morphism of a category gives a groupoid whose automorphism
groups are fundamental groups of the classifying space.  This module extracts
those presentations, derives the commuting-square relators that any
localization must satisfy, and runs the relator engines that compute the
abelianized automorphism group of the empty object for the two cobordism
categories: closed surfaces (detected by Euler characteristic) and closed
planar 1-manifold diagrams (detected by the signed circle count).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cob2 import (
    ConnectedClass,
    SurfaceCobordism,
    class_name,
    component,
    compose_surface,
    surface,
    surface_class,
)
from .exactmath import (
    AbelianInvariants,
    GroupPresentation,
    UnionFind,
    Word,
    free_reduce,
    quotient_group,
    reduce_lattice_rows,
)
from .fincat import FinCat, Functor, check_functor, is_groupoid
from .nerve import component_objects, fundamental_group, pi0


@dataclass(frozen=True)
class LocalizationPresentation:
    """Automorphism presentations of the groupoid obtained by inverting
    every morphism.

    ``aut`` maps each object id to a presentation of its automorphism group
    in the localized category; objects in one connected component get
    isomorphic groups, so ``components`` records the component structure for
    picking one representative per class.
    """

    base: FinCat
    components: tuple[tuple[str, ...], ...]
    aut: Mapping[str, GroupPresentation]


def localize(c: FinCat) -> LocalizationPresentation:
    """Present the automorphism groups of the universal groupoid under c."""
    comps = tuple(tuple(group) for group in pi0(c))
    auts = {obj: fundamental_group(c, obj) for obj in c.objects}
    return LocalizationPresentation(c, comps, auts)


@dataclass(frozen=True)
class RelationInstance:
    """A commuting-square witness: w1, w2: y -> x and w3, w4: x -> y.

    The four composites a = w1.w3, b = w2.w3, c = w1.w4, d = w2.w4 are
    endomorphisms of x, and a.b^-1.d.c^-1 must die in any groupoid image.
    """

    base: FinCat
    w1: int
    w2: int
    w3: int
    w4: int

    def __post_init__(self):
        c = self.base
        n = len(c.morphisms)
        for w in (self.w1, self.w2, self.w3, self.w4):
            if not 0 <= w < n:
                raise ValueError(f"morphism index {w} out of range")
        if c.src[self.w1] != c.src[self.w2] or c.tgt[self.w1] != c.tgt[self.w2]:
            raise ValueError("w1 and w2 must be parallel")
        if c.src[self.w3] != c.src[self.w4] or c.tgt[self.w3] != c.tgt[self.w4]:
            raise ValueError("w3 and w4 must be parallel")
        if c.src[self.w3] != c.tgt[self.w1] or c.tgt[self.w3] != c.src[self.w1]:
            raise ValueError("w3 must run opposite to w1")

    @property
    def x(self) -> int:
        return self.base.tgt[self.w1]

    def composites(self) -> tuple[int, int, int, int]:
        c = self.base
        return (
            c.compose(self.w3, self.w1),
            c.compose(self.w3, self.w2),
            c.compose(self.w4, self.w1),
            c.compose(self.w4, self.w2),
        )


def relation_word(r: RelationInstance) -> Word:
    """The relator a.b^-1.d.c^-1 as a word over morphism letters.

    Letters are 1-based morphism indices of the base category with sign for
    inversion, freely reduced; the degenerate instance w1 = w2, w3 = w4
    reduces to the empty word.
    """
    a, b, c, d = r.composites()
    return free_reduce((a + 1, -(b + 1), d + 1, -(c + 1)))


def abelian_loop_classes(
    c: FinCat, basepoint: str
) -> tuple[AbelianInvariants, dict[int, list[tuple[int, int]]]]:
    """Abelianized automorphism group at the basepoint with the class of
    every morphism of the component as a loop.

    Returns ``(invariants, classes)`` where ``classes[f]`` is the coordinate
    vector of morphism f transported to the basepoint; identities are zero.
    """
    p = fundamental_group(c, basepoint)
    rows = [_exponent_row(w, len(p.generators)) for w in p.relators]
    invariants, gen_classes = quotient_group(rows, len(p.generators))
    zero = [(0, mod) for _, mod in gen_classes[0]] if gen_classes else []
    classes: dict[int, list[tuple[int, int]]] = {}
    letter = {name: i for i, name in enumerate(p.generators)}
    for f in component_objects_morphisms(c, basepoint):
        name = c.morphisms[f]
        classes[f] = gen_classes[letter[name]] if name in letter else list(zero)
    return invariants, classes


def component_objects_morphisms(c: FinCat, basepoint: str) -> list[int]:
    comp = component_objects(c, basepoint)
    return [f for f in range(len(c.morphisms)) if c.src[f] in comp]


def word_class(
    classes: Mapping[int, list[tuple[int, int]]], word: Iterable[int]
) -> tuple[int, ...]:
    """Evaluate a morphism-letter word in the abelianized coordinates."""
    acc: list[int] | None = None
    for letter in word:
        vec = classes[abs(letter) - 1]
        if acc is None:
            acc = [0] * len(vec)
        sign = 1 if letter > 0 else -1
        for i, (v, mod) in enumerate(vec):
            acc[i] += sign * v
            if mod:
                acc[i] %= mod
    if acc is None:
        for vec in classes.values():
            return tuple(0 for _ in vec)
        return ()
    return tuple(acc)


def _exponent_row(word: Word, width: int) -> list[int]:
    row = [0] * width
    for letter in word:
        row[abs(letter) - 1] += 1 if letter > 0 else -1
    return row


def induced_automorphism_map(
    c: FinCat, basepoint: str, fun: Functor
) -> dict[str, str]:
    """Transport a functor into a groupoid along spanning-tree paths.

    For each presentation generator g: y -> z the image is the target
    composite (tree path to z)^-1 . F(g) . (tree path to y), an automorphism
    of the image of the basepoint.  Every presentation relator is checked to
    land on the identity, which is the universal property in its tracks.
    """
    issues = check_functor(fun)
    if issues:
        raise ValueError("not a functor: " + "; ".join(issues))
    ok, inverse_names = is_groupoid(fun.target)
    if not ok:
        raise ValueError("target is not a groupoid")
    d = fun.target
    p = fundamental_group(c, basepoint)
    gen_index = {name: i + 1 for i, name in enumerate(p.generators)}
    tree = {
        abs(w[0]) for w in p.relators if len(w) == 1
    }  # tree edges present as single-letter relators

    mmap = {
        c.morphism_index(m): d.morphism_index(v)
        for m, v in fun.morphism_map.items()
    }
    inv = {
        f: d.morphism_index(inverse_names[d.morphisms[f]])
        for f in range(len(d.morphisms))
    }

    # Walk the tree outward from the basepoint, accumulating the image in
    # the target of the path to every object of the component.
    base = c.object_index(basepoint)
    image_base = d.object_index(fun.object_map[basepoint])
    path: dict[int, int] = {base: d.identity[image_base]}
    edges = []
    for name, idx in gen_index.items():
        if idx in tree:
            f = c.morphism_index(name)
            edges.append(f)
    changed = True
    while changed:
        changed = False
        for f in edges:
            x, y = c.src[f], c.tgt[f]
            if x in path and y not in path:
                path[y] = d.compose(path[x], mmap[f])
                changed = True
            elif y in path and x not in path:
                path[x] = d.compose(path[y], inv[mmap[f]])
                changed = True

    images: dict[str, str] = {}
    image_idx: dict[int, int] = {}
    for name in p.generators:
        f = c.morphism_index(name)
        y, z = c.src[f], c.tgt[f]
        loop = d.compose(d.compose(path[y], mmap[f]), inv[path[z]])
        images[name] = d.morphisms[loop]
        image_idx[gen_index[name]] = loop

    identity = d.identity[image_base]
    for relator in p.relators:
        acc = identity
        for letter in relator:
            step = image_idx[abs(letter)]
            if letter < 0:
                step = inv[step]
            acc = d.compose(acc, step)
        if acc != identity:
            raise AssertionError("relator fails to die in the groupoid image")
    return images


# ---------------------------------------------------------------------------
# Surface relation instances and the localization class group.


@dataclass(frozen=True)
class SurfaceRelationInstance:
    """Commuting-square witness in the surface category over a closed
    1-manifold y: caps w1, w2: y -> {} and cups w3, w4: {} -> y."""

    w1: SurfaceCobordism
    w2: SurfaceCobordism
    w3: SurfaceCobordism
    w4: SurfaceCobordism

    def __post_init__(self):
        if self.w1.tgt != () or self.w2.tgt != ():
            raise ValueError("w1 and w2 must end at the empty manifold")
        if self.w3.src != () or self.w4.src != ():
            raise ValueError("w3 and w4 must start at the empty manifold")
        if self.w1.src != self.w2.src:
            raise ValueError("w1 and w2 must be parallel")
        if self.w3.tgt != self.w4.tgt:
            raise ValueError("w3 and w4 must be parallel")
        if self.w3.tgt != self.w1.src:
            raise ValueError("the cups must feed the caps")

    def composites(self) -> tuple[SurfaceCobordism, ...]:
        return (
            compose_surface(self.w3, self.w1),
            compose_surface(self.w3, self.w2),
            compose_surface(self.w4, self.w1),
            compose_surface(self.w4, self.w2),
        )


def surface_relator_vector(
    inst: SurfaceRelationInstance, index: Mapping[ConnectedClass, int]
) -> list[int] | None:
    """Exponent row of the relator over the generator basis.

    Returns None when some composite contains a component outside the
    basis, in which case the instance cannot be expressed and is skipped.
    """
    row = [0] * len(index)
    for sign, w in zip((1, -1, -1, 1), inst.composites()):
        for cls in surface_class(w).components:
            if cls not in index:
                return None
            row[index[cls]] += sign
    return row


@dataclass(frozen=True)
class SurfaceLocalizationResult:
    """Outcome of the relator engine for closed surfaces.

    ``classes[i]`` is the image of ``basis[i]`` in the computed group, as
    ``(value, modulus)`` coordinates with modulus 0 on free summands.
    """

    invariants: AbelianInvariants
    basis: tuple[ConnectedClass, ...]
    classes: tuple[tuple[tuple[int, int], ...], ...]
    relator_count: int
    skipped_instances: int

    def class_integers(self) -> dict[str, int]:
        """Generator classes as plain integers; defined when the group is
        infinite cyclic."""
        if self.invariants != AbelianInvariants(1, ()):
            raise ValueError("class integers need an infinite cyclic group")
        return {
            class_name(cls): self.classes[i][0][0]
            for i, cls in enumerate(self.basis)
        }

    def to_json(self) -> dict:
        data: dict = {"group": self.invariants.describe()}
        if self.invariants == AbelianInvariants(1, ()):
            data["classes"] = self.class_integers()
        else:
            data["classes"] = {
                class_name(cls): [list(pair) for pair in self.classes[i]]
                for i, cls in enumerate(self.basis)
            }
        return data


def connected_generators(max_complexity: int) -> tuple[ConnectedClass, ...]:
    """Connected closed surfaces with Euler characteristic >= -max_complexity,
    orientable first, by increasing genus."""
    out: list[ConnectedClass] = []
    g = 0
    while 2 - 2 * g >= -max_complexity:
        out.append((True, g))
        g += 1
    h = 1
    while 2 - h >= -max_complexity:
        out.append((False, h))
        h += 1
    return tuple(out)


def _one_circle_shapes(min_chi: int) -> list[tuple[bool, int]]:
    shapes = []
    g = 0
    while 1 - 2 * g >= min_chi:
        shapes.append((True, g))
        g += 1
    h = 1
    while 1 - h >= min_chi:
        shapes.append((False, h))
        h += 1
    return shapes


def _pieces(
    circles: tuple[str, ...], min_chi: int, as_cap: bool
) -> list[SurfaceCobordism]:
    """Cobordisms between the named circles and the empty manifold in which
    every component touches a circle and has Euler characteristic at least
    min_chi.

    One circle forces a connected piece; two circles also admit a pair of
    one-holed components, one per circle, and two epsilon variants of the
    connected orientable shape.
    """
    src = circles if as_cap else ()
    tgt = () if as_cap else circles

    def comp(orientable, genus, owned, eps=None):
        ins = owned if as_cap else ()
        outs = () if as_cap else owned
        return component(orientable, genus, ins, outs, eps)

    pieces = []
    singles = _one_circle_shapes(min_chi)
    if len(circles) == 1:
        for orientable, genus in singles:
            pieces.append(surface(src, tgt, [comp(orientable, genus, circles)]))
        return pieces
    g = 0
    while -2 * g >= min_chi:
        for second_sign in (1, -1):
            eps = {circles[0]: 1, circles[1]: second_sign}
            pieces.append(surface(src, tgt, [comp(True, g, circles, eps)]))
        g += 1
    h = 1
    while -h >= min_chi:
        pieces.append(surface(src, tgt, [comp(False, h, circles)]))
        h += 1
    for first in singles:
        for second in singles:
            pieces.append(
                surface(
                    src,
                    tgt,
                    [
                        comp(first[0], first[1], circles[:1]),
                        comp(second[0], second[1], circles[1:]),
                    ],
                )
            )
    return pieces


def _class_vector(
    w: SurfaceCobordism, index: Mapping[ConnectedClass, int]
) -> list[int] | None:
    row = [0] * len(index)
    for cls in surface_class(w).components:
        if cls not in index:
            return None
        row[index[cls]] += 1
    return row


def surface_localization_group(max_complexity: int) -> SurfaceLocalizationResult:
    """Abelian group on connected closed surfaces modulo commuting-square
    relators over y in {empty, one circle, two circles}.

    Pieces have every component on a circle of y with chi >= -max_complexity.
    Over the empty manifold composition is disjoint union, so those relators
    vanish identically, as does the contribution of any closed component of
    a piece; neither is enumerated.  For the remaining y it suffices to pit
    every piece against the all-discs reference: a general instance row is
    the signed sum of the four reference rows of its corners, and whenever
    the instance's composites stay in the basis so do those of the reference
    rows, so the relator lattice is unchanged.  Instances whose composite
    falls outside the generator basis are skipped and counted.  The free
    coordinate is normalized so the sphere class is positive.
    """
    if max_complexity < 0:
        raise ValueError("max_complexity must be nonnegative")
    basis = connected_generators(max_complexity)
    index = {cls: i for i, cls in enumerate(basis)}

    skipped = 0
    seen: set[tuple[int, ...]] = set()
    rows: list[list[int]] = []

    for n_circles in (1, 2):
        circles = tuple(f"y{i}" for i in range(n_circles))
        caps = _pieces(circles, -max_complexity, as_cap=True)
        cups = _pieces(circles, -max_complexity, as_cap=False)
        disc_cap = caps[0] if n_circles == 1 else _pieces(circles, 1, True)[0]
        disc_cup = cups[0] if n_circles == 1 else _pieces(circles, 1, False)[0]
        corner = _class_vector(compose_surface(disc_cup, disc_cap), index)
        cap_refs = [
            _class_vector(compose_surface(disc_cup, cap), index) for cap in caps
        ]
        cup_refs = [
            _class_vector(compose_surface(cup, disc_cap), index) for cup in cups
        ]
        assert corner is not None
        assert all(vec is not None for vec in cap_refs + cup_refs)
        for i, cap in enumerate(caps):
            for k, cup in enumerate(cups):
                a = _class_vector(compose_surface(cup, cap), index)
                if a is None:
                    skipped += 1
                    continue
                row = [
                    av - bv - cv + dv
                    for av, bv, cv, dv in zip(a, cup_refs[k], cap_refs[i], corner)
                ]
                key = tuple(row)
                if any(key) and key not in seen:
                    seen.add(key)
                    rows.append(row)

    reduced = reduce_lattice_rows(rows, len(basis))
    invariants, classes = quotient_group(reduced, len(basis))

    # Flip free coordinates so the sphere lands on the positive side.
    sphere = list(classes[index[(True, 0)]])
    flips = {
        pos
        for pos, (value, modulus) in enumerate(sphere)
        if modulus == 0 and value < 0
    }
    fixed = []
    for vec in classes:
        fixed.append(
            tuple(
                (-v if pos in flips else v, mod)
                for pos, (v, mod) in enumerate(vec)
            )
        )
    return SurfaceLocalizationResult(
        invariants, basis, tuple(fixed), len(rows), skipped
    )


# ---------------------------------------------------------------------------
# Planar 1-manifold localization: closed diagrams are nesting forests.

Tree = tuple  # children, each a Tree; the leaf is the empty tuple


def crossingless_matchings(m: int) -> list[tuple[tuple[int, int], ...]]:
    """All noncrossing perfect matchings of points 0..m-1, as sorted pairs."""
    if m % 2:
        raise ValueError("need an even number of points")
    if m == 0:
        return [()]
    out = []
    for j in range(1, m, 2):
        inner = crossingless_matchings(j - 1)
        outer = crossingless_matchings(m - j - 1)
        for a in inner:
            shifted_a = tuple((p + 1, q + 1) for p, q in a)
            for b in outer:
                shifted_b = tuple((p + j + 1, q + j + 1) for p, q in b)
                out.append(tuple(sorted(((0, j),) + shifted_a + shifted_b)))
    return out


def closed_diagram_forest(
    cup_pairs: Sequence[tuple[int, int]], cap_pairs: Sequence[tuple[int, int]]
) -> tuple[Tree, ...]:
    """Nesting forest of the closed diagram formed by a cup matching below
    the line and a cap matching above it.

    Circles alternate cup and cap arcs.  A circle Y sits inside X exactly
    when a downward ray from just right of Y's leftmost point crosses an odd
    number of X's cup arcs.
    """
    cup_of = {}
    for p, q in cup_pairs:
        cup_of[p] = q
        cup_of[q] = p
    cap_of = {}
    for p, q in cap_pairs:
        cap_of[p] = q
        cap_of[q] = p
    if set(cup_of) != set(cap_of):
        raise ValueError("cup and cap matchings cover different points")

    circles: list[list[tuple[int, int]]] = []  # cup arcs per circle
    unseen = set(cup_of)
    while unseen:
        start = min(unseen)
        arcs = []
        point = start
        while True:
            partner = cup_of[point]
            arcs.append((min(point, partner), max(point, partner)))
            unseen.discard(point)
            unseen.discard(partner)
            point = cap_of[partner]
            if point == start:
                break
        circles.append(arcs)

    lefts = [min(p for arc in arcs for p in arc) for arcs in circles]
    n = len(circles)
    parents: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):
        for x in range(n):
            if x == y:
                continue
            crossings = sum(1 for p, q in circles[x] if p < lefts[y] < q)
            if crossings % 2:
                parents[y].append(x)
    depth = [len(ps) for ps in parents]

    def build(node: int) -> Tree:
        children = [
            other
            for other in parents_inv[node]
            if depth[other] == depth[node] + 1
        ]
        return tuple(sorted(build(child) for child in children))

    parents_inv: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):
        for x in parents[y]:
            parents_inv[x].append(y)
    roots = [i for i in range(n) if depth[i] == 0]
    return tuple(sorted(build(root) for root in roots))


def tree_nodes(tree: Tree) -> int:
    return 1 + sum(tree_nodes(child) for child in tree)


def tree_signed_count(tree: Tree, depth: int = 0) -> int:
    """Nodes at even depth minus nodes at odd depth."""
    sign = 1 if depth % 2 == 0 else -1
    return sign + sum(tree_signed_count(child, depth + 1) for child in tree)


def enumerate_trees(max_nodes: int) -> list[Tree]:
    """Canonical nesting trees with at most max_nodes circles, smallest
    first."""
    by_size: list[list[Tree]] = [[], [()]]
    for n in range(2, max_nodes + 1):
        found: set[Tree] = set()
        # Children multisets drawn in nondecreasing order from smaller trees.
        smaller = [
            (tree, size)
            for size in range(1, n)
            for tree in by_size[size]
        ]

        def extend(start: int, remaining: int, chosen: tuple[Tree, ...]):
            if remaining == 0:
                found.add(tuple(sorted(chosen)))
                return
            for idx in range(start, len(smaller)):
                tree, size = smaller[idx]
                if size <= remaining:
                    extend(idx, remaining - size, chosen + (tree,))

        extend(0, n - 1, ())
        by_size.append(sorted(found))
    out = []
    for size in range(1, max_nodes + 1):
        out.extend(by_size[size])
    return out


@dataclass(frozen=True)
class PlanarLocalizationData:
    """Abelianized invariants of the localized planar diagram category.

    ``pi0`` is the object group (points up to cobordism), ``pi1`` the
    automorphism group of the empty object; ``tree_classes`` maps each
    nesting tree of the basis to its coordinates, sign-fixed so a single
    circle is positive.
    """

    pi0: AbelianInvariants
    pi1: AbelianInvariants
    basis: tuple[Tree, ...]
    tree_classes: tuple[tuple[tuple[int, int], ...], ...]
    derivation: tuple[str, ...] = field(default=(), compare=False)

    def circle_class(self) -> tuple[tuple[int, int], ...]:
        return self.tree_classes[self.basis.index(())]


def planar_localization_data(max_points: int = 8) -> PlanarLocalizationData:
    """Run the commuting-square relator engine on the planar model.

    Caps and cups are crossingless matchings of up to max_points boundary
    points; composites are nesting forests whose trees generate the
    endomorphisms of the empty object.  Relators are taken against the
    all-adjacent reference matching; any commuting square factors through
    such rows, so the lattice is not thinned by the restriction.
    """
    if max_points < 2 or max_points % 2:
        raise ValueError("max_points must be a positive even number")
    basis = tuple(enumerate_trees(max_points // 2))
    index = {tree: i for i, tree in enumerate(basis)}

    def vec(forest: tuple[Tree, ...]) -> list[int]:
        row = [0] * len(basis)
        for tree in forest:
            row[index[tree]] += 1
        return row

    rows: list[list[int]] = []
    for m in range(2, max_points + 1, 2):
        matchings = crossingless_matchings(m)
        ref = tuple((i, i + 1) for i in range(0, m, 2))
        corner = vec(closed_diagram_forest(ref, ref))
        cap_rows = [vec(closed_diagram_forest(ref, cap)) for cap in matchings]
        cup_rows = [vec(closed_diagram_forest(cup, ref)) for cup in matchings]
        for i, cap in enumerate(matchings):
            for k, cup in enumerate(matchings):
                a = vec(closed_diagram_forest(cup, cap))
                row = [
                    av - bv - cv + dv
                    for av, bv, cv, dv in zip(
                        a, cup_rows[k], cap_rows[i], corner
                    )
                ]
                if any(row):
                    rows.append(row)

    pi1, classes = quotient_group(reduce_lattice_rows(rows, len(basis)), len(basis))

    circle = list(classes[index[()]])
    flips = {
        pos
        for pos, (value, modulus) in enumerate(circle)
        if modulus == 0 and value < 0
    }
    fixed = tuple(
        tuple((-v if pos in flips else v, mod) for pos, (v, mod) in enumerate(vec))
        for vec in classes
    )

    # Objects: point counts joined by cups, so m and m + 2 are cobordant.
    uf = UnionFind(max_points + 1)
    pi0_rows = []
    for m in range(0, max_points - 1):
        uf.union(m, m + 2)
        pi0_rows.append([(m + 2) - m])
    pi0, _ = quotient_group(pi0_rows, 1)
    assert len(uf.groups()) == 2

    derivation = (
        "objects: point counts with m ~ m+2 via a cup, giving the order-2 "
        "class group",
        "automorphisms of the empty object: nesting trees modulo "
        f"commuting-square relators from matchings on <= {max_points} points",
    )
    return PlanarLocalizationData(pi0, pi1, basis, fixed, derivation)
