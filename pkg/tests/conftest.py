"""Shared fixtures and corpus generators for the test suite."""

import random

import pytest

from c2tambara.bispans import Bispan, ElementTuple
from c2tambara.functors import (
    FIXED, UNDERLYING, burnside_mod, cyclic_ring, fixed_point_functor,
    product_ring,
)
from c2tambara.gsets import GSet, IndexingSystem, all_isos, compose_maps, gmap_from_reps

SHAPES_4 = [GSet(a, b) for a in range(5) for b in range(3) if a + 2 * b <= 4]
SHAPES_3 = [s for s in SHAPES_4 if s.size <= 3]


@pytest.fixture(scope="session")
def bm2():
    return burnside_mod(2)


@pytest.fixture(scope="session")
def bm3():
    return burnside_mod(3)


@pytest.fixture(scope="session")
def fp2():
    return fixed_point_functor(cyclic_ring(2), {"0": "0", "1": "1"},
                               name="fp(Z/2,id)")


@pytest.fixture(scope="session")
def fp3():
    return fixed_point_functor(cyclic_ring(3), {str(i): str(i) for i in range(3)},
                               name="fp(Z/3,id)")


@pytest.fixture(scope="session")
def fp_swap():
    ring = product_ring(cyclic_ring(2), cyclic_ring(2))
    sigma = {"(0,0)": "(0,0)", "(1,1)": "(1,1)", "(0,1)": "(1,0)", "(1,0)": "(0,1)"}
    return fixed_point_functor(ring, sigma, name="fp(Z/2xZ/2,swap)")


def random_gmap(rng, src, tgt, trivial=False):
    """A uniformly random equivariant map, or None when none exists;
    stabilizer-preserving when trivial is set."""
    if src.fixed and not tgt.fixed:
        return None
    if trivial:
        if src.free and not tgt.free:
            return None
        reps = [("o", rng.randrange(tgt.free), rng.randrange(2))
                for _ in range(src.free)]
    else:
        if src.free and not tgt.size:
            return None
        pts = tgt.points()
        reps = [pts[rng.randrange(len(pts))] for _ in range(src.free)]
    fixed_imgs = [("f", rng.randrange(tgt.fixed)) for _ in range(src.fixed)]
    return gmap_from_reps(src, tgt, fixed_imgs, reps)


def random_bispan(rng, source, target, indexing, shapes=SHAPES_4):
    trivial = indexing is IndexingSystem.TRIVIAL
    for _ in range(200):
        u = rng.choice(shapes)
        v = rng.choice(shapes)
        g = random_gmap(rng, u, v, trivial=trivial)
        if g is None:
            continue
        f = random_gmap(rng, u, source)
        h = random_gmap(rng, v, target)
        if f is None or h is None:
            continue
        return Bispan(f, g, h, indexing)
    raise RuntimeError("could not sample a bispan for these endpoints")


def random_composable_triple(rng, indexing, shapes=SHAPES_4):
    while True:
        s, t, w, z = (rng.choice(shapes) for _ in range(4))
        if not all(x.size for x in (s, t, w, z)):
            continue
        try:
            p = random_bispan(rng, s, t, indexing, shapes)
            q = random_bispan(rng, t, w, indexing, shapes)
            r = random_bispan(rng, w, z, indexing, shapes)
        except RuntimeError:
            continue
        return p, q, r


def brute_force_bispan_equal(p: Bispan, q: Bispan) -> bool:
    """Independent oracle for iso-class equality: search over all pairs of
    equivariant bijections of U and V making the ladder commute."""
    if (p.S, p.T) != (q.S, q.T) or p.U != q.U or p.V != q.V:
        return False
    for phi_u in all_isos(p.U):
        if any(q.f(phi_u(x)) != p.f(x) for x in p.U.points()):
            continue
        for phi_v in all_isos(p.V):
            if any(q.h(phi_v(v)) != p.h(v) for v in p.V.points()):
                continue
            if all(q.g(phi_u(x)) == phi_v(p.g(x)) for x in p.U.points()):
                return True
    return False


def random_burnside_tuple(rng, gset, bound=4):
    return ElementTuple(
        gset,
        tuple((rng.randint(-bound, bound), rng.randint(-bound, bound))
              for _ in range(gset.fixed)),
        tuple(rng.randint(-bound, bound) for _ in range(gset.free)))


def random_table_tuple(rng, functor, gset):
    fx = functor.elements(FIXED)
    un = functor.elements(UNDERLYING)
    return ElementTuple(gset,
                        tuple(rng.choice(fx) for _ in range(gset.fixed)),
                        tuple(rng.choice(un) for _ in range(gset.free)))


def diagram_signature(g, h):
    """Iso-invariant of a composable pair A -h-> S -g-> T, used to
    deduplicate the exponential-identity corpus.  Per S-point the h-fiber is
    described by its orbit profile; T-orbits then collect the decorated
    profiles of their g-fibers."""
    a_set, s_set, t_set = h.source, g.source, g.target
    sfib = {t: [] for t in t_set.points()}
    for s in s_set.points():
        sfib[g(s)].append(s)
    afib = {s: [] for s in s_set.points()}
    for a in a_set.points():
        afib[h(a)].append(a)

    def profile(s):
        fixed = sum(1 for a in afib[s] if GSet.is_fixed_point(a))
        whole = sum(1 for a in afib[s]
                    if not GSet.is_fixed_point(a) and a[2] == 0
                    and GSet.gamma(a) in afib[s])
        return (fixed, whole, len(afib[s]) - fixed - 2 * whole)

    blocks = []
    for i in range(t_set.fixed):
        t = ("f", i)
        items = []
        for s in sfib[t]:
            if GSet.is_fixed_point(s):
                items.append(("sf", profile(s)))
            elif s[2] == 0:
                items.append(("so", profile(s)))
        blocks.append(("tf", tuple(sorted(items))))
    for j in range(t_set.free):
        m0 = tuple(sorted(profile(s) for s in sfib[("o", j, 0)]))
        blocks.append(("to", m0))
    return tuple(sorted(blocks))
