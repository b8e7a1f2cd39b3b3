"""The category of bispans of finite C2-sets with exponents in an indexing
system: generators, iso-class equality, composition by rewriting, products,
and evaluation into any two-level functor.

A bispan S <-f- U -g-> V -h-> T is a morphism from S to T; the middle leg g
must belong to the ambient indexing system.  Morphisms are isomorphism
classes: relabelling U and V by any pair of equivariant bijections making
the ladder commute gives the same morphism.  Equality is decided through a
complete invariant: the multiset of per-V-orbit block signatures (see
``_signature``), which determines the diagram up to such relabellings.
Constructed bispans are stored canonically, with V- and U-orbits sorted by
their block signatures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapabilityError, InputMismatchError, MembershipError
from .functors import FIXED, UNDERLYING
from .gsets import (
    EMPTY, GMap, GSet, IndexingSystem, canonical_quotient, compose_maps,
    coproduct, exponential_diagram, gmap_from_obj, gmap_to_obj, gset_from_obj,
    gset_to_obj, identity_map, is_member, pullback,
)


class Bispan:
    """Isomorphism class of S <-f- U -g-> V -h-> T with g in the system."""

    __slots__ = ("f", "g", "h", "indexing", "_sig")

    def __init__(self, f: GMap, g: GMap, h: GMap, indexing: IndexingSystem):
        if f.source != g.source:
            raise InputMismatchError("f and g must share their source U")
        if g.target != h.source:
            raise InputMismatchError("target of g must be the source of h")
        if not is_member(g, indexing):
            raise MembershipError(
                f"middle map is not in the {indexing.value} indexing system")
        f, g, h = _canonical_legs(f, g, h)
        self.f = f
        self.g = g
        self.h = h
        self.indexing = indexing
        self._sig = (f.target, h.target, _signature(f, g, h))

    @property
    def S(self) -> GSet:
        return self.f.target

    @property
    def U(self) -> GSet:
        return self.f.source

    @property
    def V(self) -> GSet:
        return self.g.target

    @property
    def T(self) -> GSet:
        return self.h.target

    def __eq__(self, other):
        if not isinstance(other, Bispan):
            return NotImplemented
        return self.indexing is other.indexing and self._sig == other._sig

    def __hash__(self):
        return hash((self.indexing, self._sig))

    def __repr__(self):
        return (f"Bispan({self.S!r} <- {self.U!r} -> {self.V!r} -> {self.T!r},"
                f" {self.indexing.value})")


def _signature(f: GMap, g: GMap, h: GMap):
    """Complete iso invariant: sorted block data, one block per V-orbit.

    For a fixed v the block is h(v) plus the multiset of f-images over the
    g-fiber (fixed U-points by exact image; free U-orbits by image orbit,
    since the orbit representative may be flipped freely).  For a free orbit
    {v, gv} every U-orbit over it meets each of the two fibers once, so the
    block is the pair (h(v), sorted f-images over v), taken up to the swap
    v <-> gv (the min of the two readings).
    """
    u, v_set = f.source, g.target
    fiber = {v: [] for v in v_set.points()}
    for p in u.points():
        fiber[g(p)].append(p)
    blocks = []
    for i in range(v_set.fixed):
        v = ("f", i)
        items = []
        for p in fiber[v]:
            if GSet.is_fixed_point(p):
                items.append(("uf", f(p)))
            elif p[2] == 0:
                q = f(p)
                if GSet.is_fixed_point(q):
                    items.append(("uo_fix", q))
                else:
                    items.append(("uo_free", q[1]))
        blocks.append(("vf", h(v), tuple(sorted(items))))
    for j in range(v_set.free):
        v0, v1 = ("o", j, 0), ("o", j, 1)
        m0 = tuple(sorted(f(p) for p in fiber[v0]))
        m1 = tuple(sorted(f(p) for p in fiber[v1]))
        blocks.append(("vo", min((h(v0), m0), (h(v1), m1))))
    return tuple(sorted(blocks))


def _canonical_legs(f: GMap, g: GMap, h: GMap):
    """Relabel U and V so that orbit blocks appear in signature order and
    each free V-orbit representative realizes the minimal block reading."""
    u, v_set = f.source, g.target
    fiber = {v: [] for v in v_set.points()}
    for p in u.points():
        fiber[g(p)].append(p)

    fixed_blocks = []  # (sort key, v)
    for i in range(v_set.fixed):
        v = ("f", i)
        items = []
        for p in fiber[v]:
            if GSet.is_fixed_point(p):
                items.append(("uf", f(p)))
            elif p[2] == 0:
                q = f(p)
                items.append(("uo_fix", q) if GSet.is_fixed_point(q)
                             else ("uo_free", q[1]))
        fixed_blocks.append(((h(v), tuple(sorted(items))), v))
    fixed_blocks.sort(key=lambda kv: kv[0])

    free_blocks = []  # (sort key, chosen representative)
    for j in range(v_set.free):
        v0, v1 = ("o", j, 0), ("o", j, 1)
        m0 = tuple(sorted(f(p) for p in fiber[v0]))
        m1 = tuple(sorted(f(p) for p in fiber[v1]))
        if (h(v0), m0) <= (h(v1), m1):
            free_blocks.append(((h(v0), m0), v0))
        else:
            free_blocks.append(((h(v1), m1), v1))
    free_blocks.sort(key=lambda kv: kv[0])

    v_new = GSet(v_set.fixed, v_set.free)
    v_relabel = {}
    for i, (_, v) in enumerate(fixed_blocks):
        v_relabel[v] = ("f", i)
    for j, (_, rep) in enumerate(free_blocks):
        v_relabel[rep] = ("o", j, 0)
        v_relabel[GSet.gamma(rep)] = ("o", j, 1)

    # U-orbits: walk blocks in their new order, sorting within each block.
    u_fixed, u_orbits = [], []  # raw fixed points / (representative) pairs
    for _, v in fixed_blocks:
        fx = sorted(p for p in fiber[v] if GSet.is_fixed_point(p))
        u_fixed.extend(fx)
        reps = []
        for p in fiber[v]:
            if GSet.is_fixed_point(p) or p[2] != 0:
                continue
            q = f(p)
            # pick the representative whose f-image is an orbit's 0-point
            rep = p if (GSet.is_fixed_point(q) or q[2] == 0) else GSet.gamma(p)
            reps.append((f(rep), rep))
        reps.sort()
        u_orbits.extend(rep for _, rep in reps)
    for _, vrep in free_blocks:
        reps = sorted((f(p), p) for p in fiber[vrep])
        u_orbits.extend(rep for _, rep in reps)

    u_new = GSet(len(u_fixed), len(u_orbits))
    u_relabel = {}
    for i, p in enumerate(u_fixed):
        u_relabel[p] = ("f", i)
    for j, p in enumerate(u_orbits):
        u_relabel[p] = ("o", j, 0)
        u_relabel[GSet.gamma(p)] = ("o", j, 1)

    u_inv = {new: old for old, new in u_relabel.items()}
    v_inv = {new: old for old, new in v_relabel.items()}
    f_new = GMap(u_new, f.target, {p: f(u_inv[p]) for p in u_new.points()})
    g_new = GMap(u_new, v_new, {p: v_relabel[g(u_inv[p])] for p in u_new.points()})
    h_new = GMap(v_new, h.target, {p: h(v_inv[p]) for p in v_new.points()})
    return f_new, g_new, h_new


def make_R(f: GMap, indexing=IndexingSystem.COMPLETE) -> Bispan:
    """Restriction generator: a bispan from f.target to f.source."""
    ident = identity_map(f.source)
    return Bispan(f, ident, ident, indexing)


def make_N(f: GMap, indexing: IndexingSystem) -> Bispan:
    """Norm generator along f; f must belong to the indexing system."""
    return Bispan(identity_map(f.source), f, identity_map(f.target), indexing)


def make_T(f: GMap, indexing=IndexingSystem.COMPLETE) -> Bispan:
    """Transfer generator along f."""
    ident = identity_map(f.source)
    return Bispan(ident, ident, f, indexing)


def identity_bispan(s: GSet, indexing=IndexingSystem.COMPLETE) -> Bispan:
    return make_R(identity_map(s), indexing)


def compose(q: Bispan, p: Bispan) -> Bispan:
    """Composite q after p, computed by full normalization.

    Writing p = T N R and q = T N R, the restriction of q is pushed left
    through the transfer and norm legs of p (pullbacks, then an exponential
    diagram for the norm-past-transfer step), after which adjacent R, N and
    T legs merge by plain composition.
    """
    if p.indexing is not q.indexing:
        raise InputMismatchError("bispans live in different indexing systems")
    if p.T != q.S:
        raise InputMismatchError("bispans are not composable")
    # R_{f_q} past T_{h_p}: pullback of h_p along f_q
    _, to_uq, to_vp = pullback(q.f, p.h)
    # N_{g_q} past the new transfer leg: exponential diagram
    diagram = exponential_diagram(q.g, to_uq)
    # R legs: R_{g'} then R_{f'_e}: compose underneath
    r_leg = compose_maps(to_vp, diagram.f_prime)
    # R past N_{g_p}: pullback of g_p along the combined restriction
    _, to_x, to_up = pullback(r_leg, p.g)
    f_new = compose_maps(p.f, to_up)
    g_new = compose_maps(diagram.g_prime, to_x)
    h_new = compose_maps(q.h, diagram.h_prime)
    return Bispan(f_new, g_new, h_new, p.indexing)


def product(p: Bispan, q: Bispan) -> Bispan:
    """Componentwise disjoint union; the categorical product structure."""
    if p.indexing is not q.indexing:
        raise MembershipError("bispans live in different indexing systems")
    s, is1, is2 = coproduct(p.S, q.S)
    u, iu1, iu2 = coproduct(p.U, q.U)
    v, iv1, iv2 = coproduct(p.V, q.V)
    t, it1, it2 = coproduct(p.T, q.T)

    def glue(m1, m2, inc_src1, inc_src2, inc_tgt1, inc_tgt2, src, tgt):
        mp = {}
        for pt in m1.source.points():
            mp[inc_src1(pt)] = inc_tgt1(m1(pt))
        for pt in m2.source.points():
            mp[inc_src2(pt)] = inc_tgt2(m2(pt))
        return GMap(src, tgt, mp)

    f = glue(p.f, q.f, iu1, iu2, is1, is2, u, s)
    g = glue(p.g, q.g, iu1, iu2, iv1, iv2, u, v)
    h = glue(p.h, q.h, iv1, iv2, it1, it2, v, t)
    return Bispan(f, g, h, p.indexing)


# --- formal sums -------------------------------------------------------------

class FormalSum:
    """Integer combination of bispans with a common source and target.

    Terms are deduplicated through bispan (iso-class) equality and
    zero-coefficient terms are dropped."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: GSet, target: GSet, terms):
        self.source = source
        self.target = target
        acc = {}
        for span, coeff in terms:
            if span.S != source or span.T != target:
                raise InputMismatchError("term endpoints do not match the sum")
            acc[span] = acc.get(span, 0) + coeff
        self.terms = tuple(sorted(
            ((s, c) for s, c in acc.items() if c != 0),
            key=lambda sc: (sc[0]._sig, sc[1])))

    @classmethod
    def of(cls, span: Bispan, coeff=1) -> "FormalSum":
        return cls(span.S, span.T, [(span, coeff)])

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            raise InputMismatchError("formal sums with different endpoints")
        return FormalSum(self.source, self.target,
                         list(self.terms) + list(other.terms))

    def __neg__(self):
        return FormalSum(self.source, self.target,
                         [(s, -c) for s, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return (self.source, self.target, self.terms) == \
            (other.source, other.target, other.terms)

    def __hash__(self):
        return hash((self.source, self.target, self.terms))

    def __len__(self):
        return len(self.terms)


# --- evaluation --------------------------------------------------------------

@dataclass(frozen=True)
class ElementTuple:
    """Functor elements indexed by the points of a C2-set: a fixed-level
    element per fixed point and an underlying element per free orbit (the
    value at (oj,1) is the conjugate of the stored value at (oj,0))."""

    gset: GSet
    fixed: tuple
    orbits: tuple

    def __post_init__(self):
        if len(self.fixed) != self.gset.fixed or len(self.orbits) != self.gset.free:
            raise InputMismatchError("element tuple does not match the C2-set")

    def at(self, point, functor):
        """Value at an arbitrary point (conjugating for (oj,1))."""
        if point[0] == "f":
            return self.fixed[point[1]]
        value = self.orbits[point[1]]
        return value if point[2] == 0 else functor.conj(value)


def evaluate(span: Bispan, functor, values: ElementTuple) -> ElementTuple:
    """Run a bispan on a tuple of functor elements: restrict along f,
    multiply/norm along g, and add/transfer along h.

    Trivial-system bispans evaluate in any Green functor; complete-system
    bispans require a norm."""
    if span.indexing is IndexingSystem.COMPLETE and not functor.has_norm:
        raise CapabilityError(
            "complete-system bispans need a functor with a norm")
    if values.gset != span.S:
        raise InputMismatchError("input tuple does not live over the source")

    # restriction along f
    u_fixed = []
    for p in span.U.fixed_points():
        q = span.f(p)
        u_fixed.append(values.fixed[q[1]])  # fixed points map to fixed points
    u_orbits = []
    for p in span.U.orbit_reps():
        q = span.f(p)
        if GSet.is_fixed_point(q):
            u_orbits.append(functor.res(values.fixed[q[1]]))
        else:
            u_orbits.append(values.at(q, functor))
    u_vals = ElementTuple(span.U, tuple(u_fixed), tuple(u_orbits))

    # multiplication / norm along g
    fiber = {v: [] for v in span.V.points()}
    for p in span.U.points():
        fiber[span.g(p)].append(p)
    v_fixed = []
    for v in span.V.fixed_points():
        acc = functor.one(FIXED)
        seen_orbits = set()
        for p in fiber[v]:
            if GSet.is_fixed_point(p):
                acc = functor.mul(FIXED, acc, u_vals.fixed[p[1]])
            elif p[1] not in seen_orbits:
                seen_orbits.add(p[1])
                acc = functor.mul(FIXED, acc, functor.norm(u_vals.orbits[p[1]]))
        v_fixed.append(acc)
    v_orbits = []
    for v in span.V.orbit_reps():
        acc = functor.one(UNDERLYING)
        for p in fiber[v]:
            acc = functor.mul(UNDERLYING, acc, u_vals.at(p, functor))
        v_orbits.append(acc)
    v_vals = ElementTuple(span.V, tuple(v_fixed), tuple(v_orbits))

    # addition / transfer along h
    h_fiber = {t: [] for t in span.T.points()}
    for v in span.V.points():
        h_fiber[span.h(v)].append(v)
    t_fixed = []
    for t in span.T.fixed_points():
        acc = functor.zero(FIXED)
        seen_orbits = set()
        for v in h_fiber[t]:
            if GSet.is_fixed_point(v):
                acc = functor.add(FIXED, acc, v_vals.fixed[v[1]])
            elif v[1] not in seen_orbits:
                seen_orbits.add(v[1])
                acc = functor.add(FIXED, acc, functor.tr(v_vals.orbits[v[1]]))
        t_fixed.append(acc)
    t_orbits = []
    for t in span.T.orbit_reps():
        acc = functor.zero(UNDERLYING)
        for v in h_fiber[t]:
            acc = functor.add(UNDERLYING, acc, v_vals.at(v, functor))
        t_orbits.append(acc)
    return ElementTuple(span.T, tuple(t_fixed), tuple(t_orbits))


# --- JSON --------------------------------------------------------------------

def bispan_to_obj(span: Bispan) -> dict:
    return {
        "S": gset_to_obj(span.S),
        "U": gset_to_obj(span.U),
        "V": gset_to_obj(span.V),
        "T": gset_to_obj(span.T),
        "f": gmap_to_obj(span.f),
        "g": gmap_to_obj(span.g),
        "h": gmap_to_obj(span.h),
        "indexing": span.indexing.value,
    }


def bispan_from_obj(obj) -> Bispan:
    if not isinstance(obj, dict):
        raise InputMismatchError("bispan file must hold a JSON object")
    required = {"S", "U", "V", "T", "f", "g", "h", "indexing"}
    if not required <= set(obj):
        raise InputMismatchError(f"bispan object needs keys {sorted(required)}")
    try:
        indexing = IndexingSystem(obj["indexing"])
    except ValueError:
        raise InputMismatchError(f"unknown indexing system {obj['indexing']!r}")
    f = gmap_from_obj(obj["f"])
    g = gmap_from_obj(obj["g"])
    h = gmap_from_obj(obj["h"])
    for key, gset, actual in (("S", obj["S"], f.target), ("U", obj["U"], f.source),
                              ("V", obj["V"], g.target), ("T", obj["T"], h.target)):
        if gset_from_obj(gset) != actual:
            raise InputMismatchError(f"declared {key} does not match the maps")
    return Bispan(f, g, h, indexing)


def element_tuple_to_obj(values: ElementTuple, functor) -> dict:
    return {
        "fixed": [functor.element_to_obj(FIXED, a) for a in values.fixed],
        "orbits": [functor.element_to_obj(UNDERLYING, a) for a in values.orbits],
    }


def element_tuple_from_obj(obj, gset: GSet, functor) -> ElementTuple:
    if not isinstance(obj, dict) or not {"fixed", "orbits"} <= set(obj):
        raise InputMismatchError("element tuple needs 'fixed' and 'orbits' lists")
    fixed = obj["fixed"]
    orbits = obj["orbits"]
    if not isinstance(fixed, list) or not isinstance(orbits, list):
        raise InputMismatchError("'fixed' and 'orbits' must be lists")
    if len(fixed) != gset.fixed or len(orbits) != gset.free:
        raise InputMismatchError("element tuple does not match the source set")
    return ElementTuple(
        gset,
        tuple(functor.element_from_obj(FIXED, e) for e in fixed),
        tuple(functor.element_from_obj(UNDERLYING, e) for e in orbits))
