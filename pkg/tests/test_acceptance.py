"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS line on success; run with `pytest -v -s
tests/test_acceptance.py` to see them.  All randomness is seeded, so the
suite is deterministic.
"""

import random
import time

from cobcat import cob1, cob2, fincat, localize, monoidal, nerve
from cobcat.exactmath import AbelianInvariants

Z = AbelianInvariants(1, ())
Z2 = AbelianInvariants(0, (2,))
TRIVIAL = AbelianInvariants(0, ())


def test_criterion_01_nerve_homology():
    start = time.monotonic()

    sphere = fincat.subset_poset_category(4)
    h = nerve.homology(nerve.build_nerve(sphere, cap=3))
    assert [g.describe() for g in h] == ["Z", "0", "Z"]

    parallel = fincat.parallel_pair()
    p = nerve.fundamental_group(parallel, "a")
    # one spanning-tree relator kills one generator; the survivor is free
    assert len(p.generators) - len(p.relators) == 1
    assert all(len(word) == 1 for word in p.relators)
    from cobcat.exactmath import abelianize

    assert abelianize(p) == Z

    for pointed in (fincat.terminal_category(), fincat.interval_category()):
        h = nerve.homology(nerve.build_nerve(pointed, cap=3))
        assert [g.describe() for g in h] == ["Z", "0", "0"]

    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    print(f"criterion 01 PASS: nerve homology (S2 poset, parallel pair, "
          f"terminal objects) in {elapsed:.2f}s")


def test_criterion_02_cobordism_groups():
    assert cob2.cobordism_group(0, oriented=False) == Z2
    assert cob2.cobordism_group(1, oriented=False) == TRIVIAL
    assert cob2.cobordism_group(2, oriented=False) == Z2
    assert cob2.cobordism_group(0, oriented=True) == Z
    assert cob2.cobordism_group(1, oriented=True) == TRIVIAL
    assert cob2.cobordism_group(2, oriented=True) == TRIVIAL
    assert cob2.is_nullbordant(cob2.surface_class(cob2.klein_endo()))
    print("criterion 02 PASS: N_0=Z/2, N_1=0, N_2=Z/2, "
          "Omega_0=Z, Omega_1=Omega_2=0, Klein bottle nullbordant")


def test_criterion_03_surface_localization():
    start = time.monotonic()
    for bound in (4, 6, 8):
        result = localize.surface_localization_group(bound)
        assert result.invariants == Z
        classes = result.class_integers()
        for cls in localize.connected_generators(bound):
            assert classes[cob2.class_name(cls)] == cob2.chi_of_class(cls)
        assert classes["T2"] == 0
        assert classes["K"] == 0
        # the empty surface is the monoid unit, so its class is the empty
        # sum: class(T2) = class(K) = class(empty) = 0
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    print(f"criterion 03 PASS: localized surface group is Z with class = chi "
          f"at bounds 4, 6, 8 in {elapsed:.2f}s")


def test_criterion_04_planar_f_functor():
    rng = random.Random(401)
    for _ in range(10**4):
        m = rng.randrange(4)
        w1 = cob1.random_planar_word(rng, m, rng.randrange(21))
        w2 = cob1.random_planar_word(rng, w1.counts()[-1], rng.randrange(21))
        composite = cob1.compose_planar(w1, w2)
        assert cob1.f_invariant(composite) == (
            cob1.f_invariant(w1) + cob1.f_invariant(w2)
        )

    assert cob1.f_invariant(cob1.planar_circle()) == 1
    assert cob1.f_invariant(cob1.planar_nested_pair()) == 0

    checked = 0
    for m in (0, 1, 2):
        for w in cob1.enumerate_words(m, 4):
            assert cob1.f_invariant(w) == cob1.f_invariant_grid(w)
            checked += 1
    for _ in range(400):
        m = rng.randrange(4)
        w = cob1.random_planar_word(rng, m, rng.randrange(5, 13))
        assert cob1.f_invariant(w) == cob1.f_invariant_grid(w)
        checked += 1
    print(f"criterion 04 PASS: f additive on 10^4 composites, f(circle)=1, "
          f"f(nested)=0, sweep matches grid oracle on {checked} words")


def random_matching(rng, m, n):
    points = list(range(m + n))
    rng.shuffle(points)
    pairs = [(points[2 * i], points[2 * i + 1]) for i in range(len(points) // 2)]
    return cob1.matching(m, n, pairs, circles=rng.randrange(3))


def test_criterion_05_euler_tqft():
    rng = random.Random(501)
    names = ["c0", "c1", "c2"]
    for _ in range(10**4):
        a = names[: rng.randrange(3)]
        b = names[: rng.randrange(1, 4)]
        c = names[: rng.randrange(3)]
        w1 = cob2.random_surface(rng, a, b)
        w2 = cob2.random_surface(rng, b, c)
        composite = cob2.compose_surface(w1, w2)
        assert cob2.euler_tqft(composite) == (
            cob2.euler_tqft(w1) + cob2.euler_tqft(w2)
        )

    corpus = [
        cob1.identity_matching(0),
        cob1.identity_matching(3),
        cob1.cup_matching(),
        cob1.cap_matching(),
        cob1.matching(0, 0, [], circles=2),
    ]
    for _ in range(2000):
        parity = rng.randrange(2)
        m = 2 * rng.randrange(4) + parity
        n = 2 * rng.randrange(4) + parity
        corpus.append(random_matching(rng, m, n))
    for w in corpus:
        lhs = cob1.euler_functor_1d(w)
        rhs = cob1.euler_triviality_witness(w.n) - cob1.euler_triviality_witness(w.m)
        assert lhs == rhs
    print(f"criterion 05 PASS: Euler functorial on 10^4 surface composites; "
          f"d=1 witness trivializes E_1 on {len(corpus)} morphisms")


def test_criterion_06_composition_laws():
    rng = random.Random(601)
    names = ["c0", "c1", "c2"]

    def integral(w):
        return all(
            isinstance(c.genus, int) and c.genus >= (0 if c.orientable else 1)
            for c in w.components
        )

    for _ in range(5000):
        a = names[: rng.randrange(3)]
        b = names[: rng.randrange(1, 4)]
        c = names[: rng.randrange(1, 4)]
        d = names[: rng.randrange(3)]
        w1 = cob2.random_surface(rng, a, b)
        w2 = cob2.random_surface(rng, b, c)
        w3 = cob2.random_surface(rng, c, d)
        left = cob2.compose_surface(cob2.compose_surface(w1, w2), w3)
        right = cob2.compose_surface(w1, cob2.compose_surface(w2, w3))
        assert left == right
        assert integral(left)

    for _ in range(5000):
        a = names[: rng.randrange(3)]
        b = names[: rng.randrange(3)]
        w = cob2.random_surface(rng, a, b)
        assert cob2.compose_surface(cob2.identity_surface(a), w) == w
        assert cob2.compose_surface(w, cob2.identity_surface(b)) == w
        assert integral(w)

    for x in (1, -1):
        for y in (1, -1):
            bent_up = cob2.surface(
                (), ("a", "b"),
                [cob2.component(True, 0, (), ("a", "b"), {"a": 1, "b": x})],
            )
            bent_down = cob2.surface(
                ("a", "b"), (),
                [cob2.component(True, 0, ("a", "b"), (), {"a": 1, "b": y})],
            )
            closed = cob2.compose_surface(bent_up, bent_down)
            expected = (True, 1) if x * y == 1 else (False, 2)
            assert cob2.surface_class(closed) == cob2.closed_class([expected])
    print("criterion 06 PASS: associativity and units on 10^4 random "
          "composites, genus integrality, cylinder pair gives torus/Klein "
          "by sign parity")


def test_criterion_07_free_commutative_monoid():
    rng = random.Random(701)
    generators = [(True, g) for g in range(5)] + [(False, h) for h in range(1, 6)]
    for _ in range(10**4):
        factors = [rng.choice(generators) for _ in range(rng.randrange(7))]
        shuffled = factors[:]
        rng.shuffle(shuffled)
        s = cob2.closed_class(factors)
        assert cob2.closed_class(shuffled) == s
        assert sorted(s.components, key=cob2._class_key) == list(s.components)
        assert sorted(factors, key=cob2._class_key) == list(s.components)
        if factors:
            bumped = factors[:]
            orientable, g = bumped[0]
            bumped[0] = (orientable, g + 1) if orientable or g < 5 else (True, 0)
            assert cob2.closed_class(bumped) != s
    print("criterion 07 PASS: closed-surface monoid factors uniquely into "
          "connected classes across 10^4 fuzz rounds")


def test_criterion_08_restricted_extended_theories():
    rng = random.Random(801)
    fields = [
        monoidal.RationalField(),
        monoidal.PrimeField(2),
        monoidal.PrimeField(3),
        monoidal.PrimeField(5),
        monoidal.PrimeField(7),
    ]
    checked = 0
    extended = 0
    for fld in fields:
        for _ in range(100):
            dim = rng.randrange(1, 5)
            rows = [[0] * dim for _ in range(dim)]
            for i in range(dim):
                for j in range(i, dim):
                    rows[i][j] = rows[j][i] = rng.randrange(-4, 5)
            theory = monoidal.frobenius(fld, rows)
            ext = monoidal.extend_to_full(theory)
            degenerate = monoidal.mat_det(fld, theory.pairing) == fld.zero()
            assert ext.extends == (not degenerate)
            checked += 1
            if not ext.extends:
                continue
            extended += 1
            ev = ext.evaluator
            ident = monoidal.mat_identity(fld, dim)
            left_zig = monoidal.mat_mul(
                fld,
                ev.evaluate(cob1.tensor_matching(
                    cob1.cap_matching(), cob1.identity_matching(1))),
                ev.evaluate(cob1.tensor_matching(
                    cob1.identity_matching(1), cob1.cup_matching())),
            )
            right_zig = monoidal.mat_mul(
                fld,
                ev.evaluate(cob1.tensor_matching(
                    cob1.identity_matching(1), cob1.cap_matching())),
                ev.evaluate(cob1.tensor_matching(
                    cob1.cup_matching(), cob1.identity_matching(1))),
            )
            assert left_zig == ident
            assert right_zig == ident

    for fld in fields:
        for dim in range(1, 5):
            rows = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
            ext = monoidal.extend_to_full(monoidal.frobenius(fld, rows))
            assert ext.extends
            assert ext.evaluator.circle_value() == fld.from_int(dim)
    print(f"criterion 08 PASS: {checked} random pairings extend iff "
          f"nondegenerate ({extended} extended, zig-zag = identity on each); "
          f"Z(circle) = dim on standard pairings")


def test_criterion_09_picard_data():
    for p in (3, 5, 7, 13):
        graded = monoidal.graded_lines_picard(p)
        g = graded.pi0.generator(0)
        assert monoidal.k_invariant(graded, g) == monoidal.minus_one_class(p)
        assert monoidal.k_invariant(graded, g) != graded.pi1.zero()
        plain = monoidal.lines_picard(p)
        for x in plain.pi0.elements():
            assert monoidal.k_invariant(plain, x) == plain.pi1.zero()

    derived = monoidal.cob1_picard()
    assert derived.data.pi0.invariants == Z2
    assert derived.data.pi1.invariants == Z
    assert derived.k_class == derived.data.pi1.zero()

    samples = [
        monoidal.lines_picard(5),
        monoidal.graded_lines_picard(5),
        monoidal.graded_lines_picard(13),
        derived.data,
    ]
    for data in samples:
        pi0, pi1 = data.pi0, data.pi1
        for x in pi0.elements():
            kx = monoidal.k_invariant(data, x)
            assert pi1.add(kx, kx) == pi1.zero()
            for y in pi0.elements():
                assert pi1.add(data.c_of(x, y), data.c_of(y, x)) == pi1.zero()
                xy = pi0.add(x, y)
                assert monoidal.k_invariant(data, xy) == pi1.add(
                    kx, monoidal.k_invariant(data, y))
                doubled = pi0.add(x, pi0.add(y, y))
                assert monoidal.k_invariant(data, doubled) == kx
    print("criterion 09 PASS: k(graded lines) is the class of -1, k(lines) "
          "trivial, 1d model gives (Z/2, Z) with k = 0; antisymmetry and "
          "mod-2 factorization hold on all samples")


def random_zero_connected(rng, src, tgt):
    """Random surface in which every component meets the outgoing boundary."""
    src = tuple(src)
    tgt = tuple(tgt)
    if not tgt:
        return cob2.surface(src, tgt, []) if not src else None
    n_comps = rng.randrange(1, len(tgt) + 1)
    buckets = [[] for _ in range(n_comps)]
    for i, c in enumerate(tgt):
        buckets[i % n_comps if i < n_comps else rng.randrange(n_comps)].append(c)
    ins = [[] for _ in range(n_comps)]
    for c in src:
        ins[rng.randrange(n_comps)].append(c)
    comps = []
    for k in range(n_comps):
        orientable = rng.random() < 0.5
        genus = rng.randrange(3) if orientable else rng.randrange(1, 4)
        if orientable:
            eps = {("in", c): rng.choice((-1, 1)) for c in ins[k]}
            eps.update({("out", c): rng.choice((-1, 1)) for c in buckets[k]})
            comps.append(cob2.component(True, genus, ins[k], buckets[k], eps))
        else:
            comps.append(cob2.component(False, genus, ins[k], buckets[k]))
    return cob2.surface(src, tgt, comps)


def rename_disjoint(w, prefix):
    """Copy of w with every boundary circle renamed to avoid collisions."""
    new = lambda c: f"{prefix}{c}"
    comps = []
    for c in w.components:
        eps = {(side, new(name)): sign for side, name, sign in c.eps} or None
        comps.append(cob2.component(
            c.orientable, c.genus,
            tuple(new(x) for x in c.in_circles),
            tuple(new(x) for x in c.out_circles), eps))
    return cob2.surface(
        tuple(new(x) for x in w.src), tuple(new(x) for x in w.tgt), comps)


def tensor_surfaces(a, b):
    return cob2.surface(a.src + b.src, a.tgt + b.tgt, a.components + b.components)


def test_criterion_10_connectivity_subcategory():
    start = time.monotonic()
    rng = random.Random(1001)
    names = ["c0", "c1", "c2"]

    for _ in range(10**4):
        a = names[: rng.randrange(3)]
        b = names[: rng.randrange(1, 4)]
        c = names[: rng.randrange(1, 4)]
        w1 = random_zero_connected(rng, a, b)
        w2 = random_zero_connected(rng, b, c)
        assert cob2.is_k_connected(w1, 0)
        assert cob2.is_k_connected(w2, 0)
        assert cob2.is_k_connected(cob2.compose_surface(w1, w2), 0)

    # pi0-surjectivity on a truncated category: every morphism is linked by
    # explicit composites to one all of whose components meet the outgoing
    # boundary.  Step 1 removes closed components (w factors through the
    # open part composed with an identity that carries them); step 2
    # sandwiches the open part between single-component funnels, each of
    # which keeps one free outgoing circle, so everything merges into
    # components that reach the target.
    corpus = []
    for _ in range(300):
        a = names[: rng.randrange(3)]
        b = names[: rng.randrange(3)]
        corpus.append(cob2.random_surface(rng, a, b, closed_extra=2))
    corpus.append(cob2.torus_endo())
    corpus.append(cob2.klein_endo())
    corpus.append(cob2.cap_disc("c0"))
    corpus.append(cob2.surface((), (), []))

    for w in corpus:
        open_comps = [c for c in w.components if c.in_circles or c.out_circles]
        closed_comps = [
            c for c in w.components if not (c.in_circles or c.out_circles)
        ]
        w_open = cob2.surface(w.src, w.tgt, open_comps)
        carrier = cob2.surface(
            w.tgt, w.tgt,
            list(cob2.identity_surface(w.tgt).components) + closed_comps)
        assert cob2.compose_surface(w_open, carrier) == w

        funnel_in = cob2.surface(
            ("alpha",), w.src + ("beta",),
            [cob2.component(
                True, 0, ("alpha",), w.src + ("beta",),
                {("in", "alpha"): 1,
                 **{("out", c): 1 for c in w.src + ("beta",)}})])
        disc = rename_disjoint(cob2.disc("delta"), "x_")
        middle = tensor_surfaces(
            tensor_surfaces(w_open, cob2.identity_surface(("beta",))), disc)
        funnel_out = cob2.surface(
            middle.tgt, ("zeta",),
            [cob2.component(
                True, 0, middle.tgt, ("zeta",),
                {**{("in", c): 1 for c in middle.tgt}, ("out", "zeta"): 1})])
        connected = cob2.compose_surface(
            cob2.compose_surface(funnel_in, middle), funnel_out)
        assert cob2.is_k_connected(connected, 0)
        assert cob2.outgoing_pi0_surjective(connected)

    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    print(f"criterion 10 PASS: 0-connected morphisms closed under 10^4 "
          f"compositions; {len(corpus)} truncated morphism classes connect "
          f"to 0-connected classes in {elapsed:.2f}s")
