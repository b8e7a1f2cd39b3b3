"""The right adjoint to forgetting norms: a Tambara functor F(R) built from
any Green functor R, together with unit/counit, hom transposition, and a
brute-force adjunction verifier for finite fixtures.

Elements of F(R) are ordered pairs (n, x): at the fixed level both
coordinates are fixed-level elements of R subject to res(n) = res(x)^2; at
the underlying level n is fixed-level and x underlying subject to
res(n) = x*conj(x).  The structure maps are closed formulas in R; the
membership conditions are exactly what makes them close up.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import CapabilityError, InputMismatchError, MembershipError
from .functors import (
    FIXED, UNDERLYING, GreenFunctor, Report, TambaraFunctor,
    check_green_axioms,
)


class AdjointTambara(TambaraFunctor):
    """The Tambara functor F(R) of membership-filtered pairs over a Green
    functor R.

    With ``strict`` on (the default) every operation validates that its
    inputs satisfy the membership condition; bulk enumeration turns this
    off since closure of the operations is itself under test elsewhere."""

    has_norm = True

    def __init__(self, green: GreenFunctor, strict: bool = True):
        self.green = green
        self.strict = strict
        self.name = f"right adjoint of {green.name}"
        self._carriers = None

    # membership -------------------------------------------------------------
    def contains(self, level, pair) -> bool:
        r = self.green
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        n, x = pair
        if level == FIXED:
            return r.eq(UNDERLYING, r.res(n),
                        r.pow(UNDERLYING, r.res(x), 2))
        return r.eq(UNDERLYING, r.res(n), r.mul(UNDERLYING, x, r.conj(x)))

    def _check(self, level, *pairs):
        if self.strict:
            for pair in pairs:
                if not self.contains(level, pair):
                    raise MembershipError(
                        f"{self.render(level, pair)} violates the {level} "
                        "membership condition")

    # helpers ------------------------------------------------------------------
    def _t_times(self, a):
        """t*a = tr(res(a)) for a fixed-level element of R."""
        return self.green.tr(self.green.res(a))

    # ring structure -------------------------------------------------------------
    def zero(self, level):
        r = self.green
        return (r.zero(FIXED), r.zero(level))

    def one(self, level):
        r = self.green
        return (r.one(FIXED), r.one(level))

    def add(self, level, a, b):
        self._check(level, a, b)
        r = self.green
        n, x = a
        m, y = b
        if level == FIXED:
            cross = self._t_times(r.mul(FIXED, x, y))
        else:
            cross = r.tr(r.mul(UNDERLYING, x, r.conj(y)))
        return (r.add(FIXED, r.add(FIXED, n, m), cross), r.add(level, x, y))

    def neg(self, level, a):
        self._check(level, a)
        r = self.green
        n, x = a
        if level == FIXED:
            head = self._t_times(r.pow(FIXED, x, 2))
        else:
            head = r.tr(r.mul(UNDERLYING, x, r.conj(x)))
        return (r.sub(FIXED, head, n), r.neg(level, x))

    def mul(self, level, a, b):
        self._check(level, a, b)
        r = self.green
        return (r.mul(FIXED, a[0], b[0]), r.mul(level, a[1], b[1]))

    # structure maps ----------------------------------------------------------------
    def conj(self, u):
        self._check(UNDERLYING, u)
        return (u[0], self.green.conj(u[1]))

    def res(self, a):
        self._check(FIXED, a)
        return (a[0], self.green.res(a[1]))

    def tr(self, u):
        self._check(UNDERLYING, u)
        r = self.green
        n, x = u
        head = r.add(FIXED, r.smul(FIXED, 2, n),
                     r.tr(r.mul(UNDERLYING, x, x)))
        return (head, r.tr(x))

    def norm(self, u):
        self._check(UNDERLYING, u)
        n, _ = u
        return (self.green.pow(FIXED, n, 2), n)

    # enumeration / rendering ------------------------------------------------------
    def elements(self, level):
        if self._carriers is None:
            fx = self.green.elements(FIXED)
            un = self.green.elements(UNDERLYING)
            if fx is None or un is None:
                return None
            self._carriers = {
                FIXED: [(n, x) for n in fx for x in fx
                        if self.contains(FIXED, (n, x))],
                UNDERLYING: [(n, x) for n in fx for x in un
                             if self.contains(UNDERLYING, (n, x))],
            }
        return list(self._carriers[level])

    def eq(self, level, a, b):
        r = self.green
        return (r.eq(FIXED, a[0], b[0])
                and r.eq(level, a[1], b[1]))

    def render(self, level, a):
        r = self.green
        return f"({r.render(FIXED, a[0])}, {r.render(level, a[1])})"


def construct(green: GreenFunctor, strict: bool = True) -> AdjointTambara:
    return AdjointTambara(green, strict=strict)


# --- homs -----------------------------------------------------------------------

@dataclass(frozen=True)
class FunctorHom:
    """A pair of level maps between two-level functors, given by dicts (for
    enumerated finite homs) or callables (unit/counit on arbitrary functors)."""

    source: object
    target: object
    fixed: object
    underlying: object

    def apply(self, level, elem):
        table = self.fixed if level == FIXED else self.underlying
        if callable(table):
            return table(elem)
        return table[elem]

    def key(self):
        if callable(self.fixed) or callable(self.underlying):
            raise CapabilityError("only table-backed homs have keys")
        return (tuple(sorted(self.fixed.items())),
                tuple(sorted(self.underlying.items())))

    def render(self) -> str:
        if callable(self.fixed) or callable(self.underlying):
            return "<functional hom>"
        s, t = self.source, self.target
        parts = []
        for lvl, table in ((FIXED, self.fixed), (UNDERLYING, self.underlying)):
            items = ", ".join(
                f"{s.render(lvl, a)}->{t.render(lvl, b)}"
                for a, b in sorted(table.items()))
            parts.append(f"{lvl}: {{{items}}}")
        return "; ".join(parts)


def hom_violations(hom: FunctorHom, tambara: bool) -> list:
    """All ways a level-map pair fails to be a (Green or Tambara) hom."""
    s, t = hom.source, hom.target
    out = []
    elems = {lvl: s.elements(lvl) for lvl in (FIXED, UNDERLYING)}
    for lvl in (FIXED, UNDERLYING):
        if not t.eq(lvl, hom.apply(lvl, s.one(lvl)), t.one(lvl)):
            out.append(("one", lvl))
        if not t.eq(lvl, hom.apply(lvl, s.zero(lvl)), t.zero(lvl)):
            out.append(("zero", lvl))
        for a in elems[lvl]:
            for b in elems[lvl]:
                img = hom.apply(lvl, s.add(lvl, a, b))
                if not t.eq(lvl, img, t.add(lvl, hom.apply(lvl, a),
                                            hom.apply(lvl, b))):
                    out.append(("add", lvl, a, b))
                img = hom.apply(lvl, s.mul(lvl, a, b))
                if not t.eq(lvl, img, t.mul(lvl, hom.apply(lvl, a),
                                            hom.apply(lvl, b))):
                    out.append(("mul", lvl, a, b))
    for a in elems[UNDERLYING]:
        if not t.eq(UNDERLYING, hom.apply(UNDERLYING, s.conj(a)),
                    t.conj(hom.apply(UNDERLYING, a))):
            out.append(("conj", a))
        if not t.eq(FIXED, hom.apply(FIXED, s.tr(a)),
                    t.tr(hom.apply(UNDERLYING, a))):
            out.append(("tr", a))
        if tambara and not t.eq(FIXED, hom.apply(FIXED, s.norm(a)),
                                t.norm(hom.apply(UNDERLYING, a))):
            out.append(("norm", a))
    for a in elems[FIXED]:
        if not t.eq(UNDERLYING, hom.apply(UNDERLYING, s.res(a)),
                    t.res(hom.apply(FIXED, a))):
            out.append(("res", a))
    return out


def is_green_hom(hom: FunctorHom) -> bool:
    return not hom_violations(hom, tambara=False)


def is_tambara_hom(hom: FunctorHom) -> bool:
    return not hom_violations(hom, tambara=True)


def _additive_generators(functor, level):
    """A small additive generating set plus an expression of every carrier
    element as a non-negative combination of the generators (via BFS)."""
    elems = functor.elements(level)
    order = sorted(elems, key=lambda e: functor.render(level, e))
    zero = functor.zero(level)
    gens = []
    span = {zero: ()}
    while len(span) < len(elems):
        new_gen = next(e for e in order if e not in span)
        gens.append(new_gen)
        span = {zero: (0,) * len(gens)}
        frontier = deque([zero])
        while frontier:
            e = frontier.popleft()
            for i, g in enumerate(gens):
                e2 = functor.add(level, e, g)
                if e2 not in span:
                    vec = list(span[e])
                    vec[i] += 1
                    span[e2] = tuple(vec)
                    frontier.append(e2)
    return gens, span


def _extend_images(target, level, images, span):
    out = {}
    for elem, vec in span.items():
        acc = target.zero(level)
        for count, img in zip(vec, images):
            acc = target.add(level, acc, target.smul(level, count, img))
        out[elem] = acc
    return out


def _enumerate_homs(source, target, tambara: bool) -> list:
    """Brute force over level-wise maps, pruned by fixing the images of a
    small additive generating set and extending additively; every candidate
    is then verified in full, so the pruning cannot admit false homs."""
    gens_f, span_f = _additive_generators(source, FIXED)
    gens_u, span_u = _additive_generators(source, UNDERLYING)
    t_fixed = target.elements(FIXED)
    t_under = target.elements(UNDERLYING)
    found = []
    for imgs_f in itertools.product(t_fixed, repeat=len(gens_f)):
        fixed_map = _extend_images(target, FIXED, imgs_f, span_f)
        if not target.eq(FIXED, fixed_map[source.one(FIXED)], target.one(FIXED)):
            continue
        for imgs_u in itertools.product(t_under, repeat=len(gens_u)):
            under_map = _extend_images(target, UNDERLYING, imgs_u, span_u)
            hom = FunctorHom(source, target, fixed_map, under_map)
            if not hom_violations(hom, tambara):
                found.append(hom)
    found.sort(key=lambda h: h.key())
    return found


def enumerate_green_homs(source, target) -> list:
    """All Green-functor maps source -> target (norms ignored)."""
    return _enumerate_homs(source, target, tambara=False)


def enumerate_tambara_homs(source, target) -> list:
    return _enumerate_homs(source, target, tambara=True)


# --- unit / counit / transposition ------------------------------------------------

def counit_map(green: GreenFunctor, adjoint: AdjointTambara = None) -> FunctorHom:
    """Green-functor map F(R) -> R (forgetting norms): second projection."""
    adjoint = adjoint or construct(green)
    return FunctorHom(adjoint, green,
                      lambda pair: pair[1], lambda pair: pair[1])


def unit_map(tambara: TambaraFunctor, adjoint: AdjointTambara = None) -> FunctorHom:
    """Tambara-functor map S -> F(S): fixed s -> (N(res s), s), underlying
    u -> (N(u), u)."""
    adjoint = adjoint or construct(tambara)
    return FunctorHom(tambara, adjoint,
                      lambda s: (tambara.norm(tambara.res(s)), s),
                      lambda u: (tambara.norm(u), u))


def transpose(phi: FunctorHom, check: bool = True) -> FunctorHom:
    """Turn a Green hom S -> R into the Tambara hom S -> F(R):
    fixed s -> (phi(N(res s)), phi(s)), underlying u -> (phi(N u), phi(u))."""
    s = phi.source
    if not s.has_norm:
        raise CapabilityError("transpose needs a Tambara functor source")
    if check and hom_violations(phi, tambara=False):
        raise MembershipError("transpose input is not a Green hom")
    adjoint = construct(phi.target)
    fixed_map = {}
    for a in s.elements(FIXED):
        fixed_map[a] = (phi.apply(FIXED, s.norm(s.res(a))), phi.apply(FIXED, a))
    under_map = {}
    for u in s.elements(UNDERLYING):
        under_map[u] = (phi.apply(FIXED, s.norm(u)), phi.apply(UNDERLYING, u))
    return FunctorHom(s, adjoint, fixed_map, under_map)


def untranspose(psi: FunctorHom, check: bool = True) -> FunctorHom:
    """Turn a Tambara hom S -> F(R) back into the Green hom S -> R by
    composing with the counit (second projection)."""
    if check and hom_violations(psi, tambara=True):
        raise MembershipError("untranspose input is not a Tambara hom")
    adjoint = psi.target
    if not isinstance(adjoint, AdjointTambara):
        raise InputMismatchError("untranspose expects a hom into F(R)")
    fixed_map = {a: psi.apply(FIXED, a)[1] for a in psi.source.elements(FIXED)}
    under_map = {u: psi.apply(UNDERLYING, u)[1]
                 for u in psi.source.elements(UNDERLYING)}
    return FunctorHom(psi.source, adjoint.green, fixed_map, under_map)


def verify_adjunction(tambara_side: TambaraFunctor,
                      green_side: GreenFunctor) -> Report:
    """Enumerate Green homs S -> R and Tambara homs S -> F(R), check that
    transposition is a mutually inverse bijection, and check both triangle
    identities on the fixture."""
    s, r = tambara_side, green_side
    report = Report(subject=f"adjunction between {s.name} and {r.name}")
    for functor in (s, r):
        for lvl in (FIXED, UNDERLYING):
            if functor.elements(lvl) is None:
                raise CapabilityError("adjunction check needs finite fixtures")

    fr = construct(r)
    green_homs = enumerate_green_homs(s, r)
    tambara_homs = enumerate_tambara_homs(s, fr)
    report.checked += len(green_homs) + len(tambara_homs)

    if len(green_homs) != len(tambara_homs):
        report.record("hom_count", (str(len(green_homs)), str(len(tambara_homs))),
                      "hom sets have different sizes")

    tambara_keys = {h.key() for h in tambara_homs}
    seen = set()
    for phi in green_homs:
        psi = transpose(phi, check=False)
        key = psi.key()
        if key not in tambara_keys:
            report.record("transpose_lands", (phi.render(),),
                          "transpose is not a Tambara hom into F(R)")
            continue
        if key in seen:
            report.record("transpose_injective", (phi.render(),),
                          "two Green homs share a transpose")
        seen.add(key)
        back = untranspose(psi, check=False)
        if back.key() != phi.key():
            report.record("untranspose_transpose", (phi.render(),),
                          "round trip does not return the original hom")
    if seen != tambara_keys:
        report.record("transpose_surjective", (),
                      f"{len(tambara_keys - seen)} Tambara homs are not transposes")
    for psi in tambara_homs:
        back = untranspose(psi, check=False)
        again = transpose(back, check=False)
        if again.key() != psi.key():
            report.record("transpose_untranspose", (psi.render(),),
                          "round trip does not return the original hom")

    # triangle: counit_{F(R)} after F(unit-compatible counit) is the identity
    for lvl in (FIXED, UNDERLYING):
        for pair in fr.elements(lvl):
            lifted = (fr.norm(fr.res(pair)) if lvl == FIXED else fr.norm(pair),
                      pair)
            collapsed = (lifted[0][1], lifted[1][1])
            if not fr.eq(lvl, collapsed, pair):
                report.record("triangle_adjoint", (fr.render(lvl, pair),),
                              "F(counit) after unit at F(R) is not the identity")
            report.checked += 1
    # triangle: counit after the unit of S is the identity on S
    unit = unit_map(s)
    for lvl in (FIXED, UNDERLYING):
        for elem in s.elements(lvl):
            back = unit.apply(lvl, elem)[1]
            if not s.eq(lvl, back, elem):
                report.record("triangle_functor", (s.render(lvl, elem),),
                              "counit after unit is not the identity")
            report.checked += 1
    return report.finalize()
