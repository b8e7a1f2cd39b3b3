"""Finite C2-sets and equivariant maps, computed at point level.

A finite C2-set is stored in canonical form: ``fixed`` points labelled
f0..f(a-1) and ``free`` orbits labelled o0..o(b-1), each free orbit holding
the two points (oj,0) and (oj,1) swapped by the group generator.  Every
construction (pullback, coproduct, dependent product) relabels its result
back into this form, so two C2-sets are isomorphic exactly when they are
equal.

Points are tuples: ('f', i) for fixed points, ('o', j, s) with s in {0, 1}
for free-orbit points.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum

from .errors import InputMismatchError

Point = tuple


class IndexingSystem(Enum):
    """The two indexing systems on C2-sets.

    TRIVIAL admits only stabilizer-preserving maps (no norms: Green
    functors); COMPLETE admits every equivariant map (Tambara functors).
    """

    TRIVIAL = "trivial"
    COMPLETE = "complete"


@dataclass(frozen=True)
class GSet:
    """A finite C2-set with ``fixed`` fixed points and ``free`` free orbits."""

    fixed: int
    free: int

    def __post_init__(self):
        if self.fixed < 0 or self.free < 0:
            raise InputMismatchError("point counts must be non-negative")

    @property
    def size(self) -> int:
        return self.fixed + 2 * self.free

    def points(self) -> list[Point]:
        pts = [("f", i) for i in range(self.fixed)]
        for j in range(self.free):
            pts.append(("o", j, 0))
            pts.append(("o", j, 1))
        return pts

    def fixed_points(self) -> list[Point]:
        return [("f", i) for i in range(self.fixed)]

    def orbit_reps(self) -> list[Point]:
        return [("o", j, 0) for j in range(self.free)]

    def has_point(self, p: Point) -> bool:
        if p[0] == "f":
            return 0 <= p[1] < self.fixed
        return 0 <= p[1] < self.free and p[2] in (0, 1)

    @staticmethod
    def gamma(p: Point) -> Point:
        """Action of the nontrivial group element."""
        if p[0] == "f":
            return p
        return ("o", p[1], 1 - p[2])

    @staticmethod
    def is_fixed_point(p: Point) -> bool:
        return p[0] == "f"

    @staticmethod
    def point_name(p: Point) -> str:
        if p[0] == "f":
            return f"f{p[1]}"
        return f"o{p[1]}.{p[2]}"

    @staticmethod
    def parse_point(name: str) -> Point:
        m = re.fullmatch(r"f(\d+)", name)
        if m:
            return ("f", int(m.group(1)))
        m = re.fullmatch(r"o(\d+)\.([01])", name)
        if m:
            return ("o", int(m.group(1)), int(m.group(2)))
        raise InputMismatchError(f"bad point name: {name!r}")

    def __repr__(self):
        return f"GSet({self.fixed}, {self.free})"


POINT = GSet(1, 0)      # the one-point set *
FREE_ORBIT = GSet(0, 1)  # the free orbit C2
EMPTY = GSet(0, 0)


class GMap:
    """Equivariant map between finite C2-sets, stored as a total point function."""

    __slots__ = ("source", "target", "_map", "_hash")

    def __init__(self, source: GSet, target: GSet, mapping: dict):
        self.source = source
        self.target = target
        mp = dict(mapping)
        for p in source.points():
            if p not in mp:
                raise InputMismatchError(f"map not total: missing {GSet.point_name(p)}")
            q = mp[p]
            if not target.has_point(q):
                raise InputMismatchError(
                    f"image {q!r} of {GSet.point_name(p)} not in target")
        if len(mp) != source.size:
            extra = set(mp) - set(source.points())
            raise InputMismatchError(f"map defined on alien points: {sorted(extra)}")
        for p in source.points():
            if mp[GSet.gamma(p)] != GSet.gamma(mp[p]):
                raise InputMismatchError(
                    f"not equivariant at {GSet.point_name(p)}")
        self._map = mp
        self._hash = None

    def __call__(self, p: Point) -> Point:
        return self._map[p]

    @property
    def mapping(self) -> dict:
        return dict(self._map)

    def __eq__(self, other):
        if not isinstance(other, GMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self._map == other._map)

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self._map.items()))
            self._hash = hash((self.source, self.target, items))
        return self._hash

    def __repr__(self):
        pairs = ", ".join(
            f"{GSet.point_name(p)}>{GSet.point_name(q)}"
            for p, q in sorted(self._map.items()))
        return f"GMap({self.source!r}->{self.target!r}: {pairs})"


def gmap_from_reps(source: GSet, target: GSet, fixed_images, rep_images) -> GMap:
    """Build a GMap from the images of f0..f(a-1) and o0.0..o(b-1).0;
    the images of the (oj,1) points follow by equivariance."""
    mp = {}
    for i, q in enumerate(fixed_images):
        mp[("f", i)] = q
    for j, q in enumerate(rep_images):
        mp[("o", j, 0)] = q
        mp[("o", j, 1)] = GSet.gamma(q)
    return GMap(source, target, mp)


def identity_map(s: GSet) -> GMap:
    return GMap(s, s, {p: p for p in s.points()})


def compose_maps(outer: GMap, inner: GMap) -> GMap:
    if inner.target != outer.source:
        raise InputMismatchError("maps not composable")
    return GMap(inner.source, outer.target,
                {p: outer(inner(p)) for p in inner.source.points()})


def quotient_map() -> GMap:
    """The projection C2 -> *."""
    return GMap(FREE_ORBIT, POINT, {("o", 0, 0): ("f", 0), ("o", 0, 1): ("f", 0)})


def is_member(f: GMap, system: IndexingSystem) -> bool:
    """Membership of a map in an indexing system.

    TRIVIAL holds exactly when every point has the same stabilizer as its
    image, i.e. no free point maps to a fixed point."""
    if system is IndexingSystem.COMPLETE:
        return True
    return all(not GSet.is_fixed_point(f(p)) for p in f.source.orbit_reps())


def canonical_quotient(points, act):
    """Relabel an abstract involution-set into canonical GSet form.

    ``points`` is a sortable collection of hashables, ``act`` the involution.
    Returns (GSet, raw-point -> canonical-point dict).  Deterministic: fixed
    points and orbit representatives are taken in sorted order.
    """
    pts = sorted(points)
    fixed_raw = [p for p in pts if act(p) == p]
    reps, seen = [], set()
    for p in pts:
        if act(p) == p or p in seen:
            continue
        reps.append(p)
        seen.add(p)
        seen.add(act(p))
    gset = GSet(len(fixed_raw), len(reps))
    relabel = {}
    for i, p in enumerate(fixed_raw):
        relabel[p] = ("f", i)
    for j, p in enumerate(reps):
        relabel[p] = ("o", j, 0)
        relabel[act(p)] = ("o", j, 1)
    return gset, relabel


def coproduct(s: GSet, s2: GSet):
    """Disjoint union with its two inclusions."""
    total = GSet(s.fixed + s2.fixed, s.free + s2.free)
    inc1 = GMap(s, total, {p: p for p in s.points()})
    mp2 = {}
    for i in range(s2.fixed):
        mp2[("f", i)] = ("f", s.fixed + i)
    for j in range(s2.free):
        mp2[("o", j, 0)] = ("o", s.free + j, 0)
        mp2[("o", j, 1)] = ("o", s.free + j, 1)
    inc2 = GMap(s2, total, mp2)
    return total, inc1, inc2


def fold(s: GSet, copies: int) -> GMap:
    """The codiagonal from ``copies`` disjoint copies of s onto s."""
    if copies < 1:
        raise InputMismatchError("fold needs a positive number of copies")
    src = GSet(s.fixed * copies, s.free * copies)
    mp = {}
    for c in range(copies):
        for i in range(s.fixed):
            mp[("f", c * s.fixed + i)] = ("f", i)
        for j in range(s.free):
            mp[("o", c * s.free + j, 0)] = ("o", j, 0)
            mp[("o", c * s.free + j, 1)] = ("o", j, 1)
    return GMap(src, s, mp)


def pullback(f: GMap, g: GMap):
    """Pullback of f and g over their common target.

    Returns (P, p1, p2) with P = {(s, s') : f(s) = g(s')} under the diagonal
    action, relabelled canonically; p1, p2 are the projections."""
    if f.target != g.target:
        raise InputMismatchError("pullback needs maps with a common target")
    raw = [(p, q) for p in f.source.points() for q in g.source.points()
           if f(p) == g(q)]

    def act(pq):
        return (GSet.gamma(pq[0]), GSet.gamma(pq[1]))

    gset, relabel = canonical_quotient(raw, act)
    p1 = GMap(gset, f.source, {relabel[pq]: pq[0] for pq in raw})
    p2 = GMap(gset, g.source, {relabel[pq]: pq[1] for pq in raw})
    return gset, p1, p2


def _sections_raw(h: GMap, g: GMap):
    """Raw data of the dependent product of h: A -> S along g: S -> T.

    A raw point is (t, sigma) where sigma is a sorted tuple of (s, a) pairs,
    one for each s in the g-fiber over t, with h(a) = s.  Returns the raw
    points and the involution."""
    if h.target != g.source:
        raise InputMismatchError("dependent product needs h: A -> S, g: S -> T")
    a_set, s_set, t_set = h.source, g.source, g.target
    fibers = {t: [s for s in s_set.points() if g(s) == t] for t in t_set.points()}
    preim = {s: [a for a in a_set.points() if h(a) == s] for s in s_set.points()}
    raw = []
    for t in t_set.points():
        fiber = fibers[t]
        for choice in itertools.product(*(preim[s] for s in fiber)):
            raw.append((t, tuple(sorted(zip(fiber, choice)))))

    def act(ts):
        t, sigma = ts
        moved = tuple(sorted((GSet.gamma(s), GSet.gamma(a)) for s, a in sigma))
        return (GSet.gamma(t), moved)

    return raw, act


def dependent_product(h: GMap, g: GMap):
    """Right adjoint to pullback along g, applied to h: A -> S over S.

    Points over t are sections of h over the g-fiber of t; computed by
    brute-force enumeration.  Returns (P, structure map P -> T)."""
    raw, act = _sections_raw(h, g)
    gset, relabel = canonical_quotient(raw, act)
    to_t = GMap(gset, g.target, {relabel[r]: r[0] for r in raw})
    return gset, to_t


@dataclass(frozen=True)
class ExponentialDiagram:
    """The rewrite data for a norm past a transfer.

    For g: S -> T and h: A -> S this holds P = dependent product of h along
    g with h_prime: P -> T, the pullback X = S x_T P, the evaluation
    f_prime: X -> A and the projection g_prime: X -> P."""

    f_prime: GMap
    g_prime: GMap
    h_prime: GMap


def exponential_diagram(g: GMap, h: GMap) -> ExponentialDiagram:
    if h.target != g.source:
        raise InputMismatchError("exponential diagram needs h: A -> S, g: S -> T")
    raw, act = _sections_raw(h, g)
    pi, relabel = canonical_quotient(raw, act)
    h_prime = GMap(pi, g.target, {relabel[r]: r[0] for r in raw})

    raw_x = [(s, r) for s in g.source.points() for r in raw if g(s) == r[0]]

    def act_x(sr):
        return (GSet.gamma(sr[0]), act(sr[1]))

    x, relabel_x = canonical_quotient(raw_x, act_x)
    f_prime = GMap(x, h.source,
                   {relabel_x[sr]: dict(sr[1][1])[sr[0]] for sr in raw_x})
    g_prime = GMap(x, pi, {relabel_x[sr]: relabel[sr[1]] for sr in raw_x})
    return ExponentialDiagram(f_prime, g_prime, h_prime)


def all_gmaps(source: GSet, target: GSet):
    """Iterate over every equivariant map source -> target (deterministic order)."""
    fixed_choices = [target.fixed_points()] * source.fixed
    rep_choices = [target.points()] * source.free
    for fixed_imgs in itertools.product(*fixed_choices):
        for rep_imgs in itertools.product(*rep_choices):
            yield gmap_from_reps(source, target, fixed_imgs, rep_imgs)


def all_isos(s: GSet):
    """Iterate over every equivariant automorphism of s."""
    for perm_f in itertools.permutations(range(s.fixed)):
        for perm_o in itertools.permutations(range(s.free)):
            for flips in itertools.product((0, 1), repeat=s.free):
                mp = {}
                for i in range(s.fixed):
                    mp[("f", i)] = ("f", perm_f[i])
                for j in range(s.free):
                    mp[("o", j, 0)] = ("o", perm_o[j], flips[j])
                    mp[("o", j, 1)] = ("o", perm_o[j], 1 - flips[j])
                yield GMap(s, s, mp)


# --- JSON encoding ---------------------------------------------------------

def gset_to_obj(s: GSet) -> dict:
    return {"fixed": s.fixed, "free": s.free}


def gset_from_obj(obj) -> GSet:
    if not isinstance(obj, dict) or set(obj) != {"fixed", "free"}:
        raise InputMismatchError(f"bad GSet object: {obj!r}")
    a, b = obj["fixed"], obj["free"]
    if not isinstance(a, int) or not isinstance(b, int) or a < 0 or b < 0:
        raise InputMismatchError(f"bad GSet counts: {obj!r}")
    return GSet(a, b)


def gmap_to_obj(f: GMap) -> dict:
    return {
        "source": gset_to_obj(f.source),
        "target": gset_to_obj(f.target),
        "map": {GSet.point_name(p): GSet.point_name(f(p))
                for p in f.source.fixed_points() + f.source.orbit_reps()},
    }


def gmap_from_obj(obj) -> GMap:
    """Decode a GMap.  Only the images of f<i> and o<j>.0 are required;
    o<j>.1 entries are permitted and cross-checked against equivariance."""
    if not isinstance(obj, dict) or not {"source", "target", "map"} <= set(obj):
        raise InputMismatchError(f"bad GMap object: {obj!r}")
    source = gset_from_obj(obj["source"])
    target = gset_from_obj(obj["target"])
    named = obj["map"]
    if not isinstance(named, dict):
        raise InputMismatchError("GMap 'map' must be an object")
    mp = {}
    for name, img_name in named.items():
        p = GSet.parse_point(name)
        if not source.has_point(p):
            raise InputMismatchError(f"point {name!r} not in source")
        mp[p] = GSet.parse_point(img_name)
    redundant = {}
    for j in range(source.free):
        if ("o", j, 1) in mp:
            redundant[("o", j, 1)] = mp.pop(("o", j, 1))
    for p in source.fixed_points() + source.orbit_reps():
        if p not in mp:
            raise InputMismatchError(f"map missing image of {GSet.point_name(p)}")
    full = {}
    for p in source.fixed_points():
        full[p] = mp[p]
    for p in source.orbit_reps():
        full[p] = mp[p]
        full[GSet.gamma(p)] = GSet.gamma(mp[p])
    for p, q in redundant.items():
        if full[p] != q:
            raise InputMismatchError(
                f"redundant image of {GSet.point_name(p)} violates equivariance")
    return GMap(source, target, full)
