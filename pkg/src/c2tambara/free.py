"""Normal-form arithmetic for the free Green and Tambara functors on one
generator (fixed or underlying), their two-generator doubles, hom extension
into arbitrary Green functors, and representing bispans for basis elements.

Elements are frozen integer combinations: a sorted tuple of (basis key,
coefficient) pairs with zero coefficients dropped.  Each functor owns its
basis-key vocabulary and the rewrite rules that keep products in normal
form; every rewrite strictly reduces the exponent budget it touches, so
normalization terminates and, being applied eagerly, is confluent by
construction.

Fixed-level bases:

* free Green, fixed generator:  x^i  and  t*x^i
* free Green, underlying generator:  1  and  t_{i,j} (i >= j, t_{0,0} = t)
* free Tambara, fixed generator:  x^a*n^b  and  t*x^e*n^b (e in {0,1})
* free Tambara, underlying generator:  n^a  and  n^a*t_i (t_0 = t)

Underlying levels are the integer polynomial rings on the restricted
generator(s).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CapabilityError, InputMismatchError, MembershipError
from .functors import (
    FIXED, UNDERLYING, GreenFunctor, Report, TambaraFunctor, render_terms,
)
from .gsets import (
    GMap, GSet, IndexingSystem, fold, gmap_from_reps, identity_map,
    quotient_map, FREE_ORBIT, POINT,
)
from . import bispans


# --- frozen integer combinations --------------------------------------------

def _freeze(d: dict):
    return tuple(sorted((k, c) for k, c in d.items() if c != 0))


def _thaw(e) -> dict:
    return dict(e)


def _combo_add(e1, e2):
    d = dict(e1)
    for k, c in e2:
        d[k] = d.get(k, 0) + c
    return _freeze(d)


def _combo_scale(k: int, e):
    if k == 0:
        return ()
    return tuple((key, k * c) for key, c in e)


def _combo_mul(e1, e2, basis_mul):
    out = {}
    for k1, c1 in e1:
        for k2, c2 in e2:
            for k, c in basis_mul(k1, k2).items():
                out[k] = out.get(k, 0) + c1 * c2 * c
    return _freeze(out)


def _burnside_int_norm(c: int):
    """Coefficients of N(c) = c*1 + ((c*c - c)/2)*t in the Burnside ring."""
    return c, (c * c - c) // 2


def _pow_str(sym: str, e: int):
    if e == 0:
        return None
    return sym if e == 1 else f"{sym}^{e}"


class _FreeFunctor(GreenFunctor):
    """Shared plumbing for the normal-form functors."""

    generator_level = FIXED

    def zero(self, level):
        return ()

    def add(self, level, a, b):
        return _combo_add(a, b)

    def neg(self, level, a):
        return _combo_scale(-1, a)

    def smul(self, level, k, a):
        return _combo_scale(k, a)

    def mul(self, level, a, b):
        if level == FIXED:
            return _combo_mul(a, b, self._fixed_basis_mul)
        return _combo_mul(a, b, self._underlying_basis_mul)

    def int_element(self, level, k):
        return _combo_scale(k, self.one(level))

    def conj(self, u):
        return _freeze({self._conj_key(k): c for k, c in u})

    def res(self, a):
        out = {}
        for k, c in a:
            for k2, c2 in self._res_key(k).items():
                out[k2] = out.get(k2, 0) + c * c2
        return _freeze(out)

    def tr(self, u):
        out = {}
        for k, c in u:
            k2 = self._tr_key(k)
            out[k2] = out.get(k2, 0) + c
        return _freeze(out)

    # hooks: _fixed_basis_mul, _underlying_basis_mul, _conj_key, _res_key,
    # _tr_key, degree, _sort_key, _monomial_str, basis_keys

    def render(self, level, a):
        terms = sorted(a, key=lambda kc: self._sort_key(level, kc[0]))
        return render_terms(
            [(c, self._monomial_str(level, k)) for k, c in terms])

    def from_key(self, level, key, coeff=1):
        return _freeze({key: coeff})

    def element_degree(self, level, a) -> int:
        return max((self.degree(level, k) for k, _ in a), default=0)

    def random_element(self, rng: random.Random, level, max_degree=6,
                       coeff_bound=9, max_terms=4):
        keys = self.basis_keys(level, max_degree)
        d = {}
        for _ in range(rng.randint(1, max_terms)):
            c = rng.randint(-coeff_bound, coeff_bound)
            d[rng.choice(keys)] = c
        return _freeze(d)

    def sample(self, level, rng):
        return self.random_element(rng, level)


class _PolyXMixin:
    """Underlying level Z[x] on the restriction of a fixed generator."""

    def _underlying_basis_mul(self, k1, k2):
        return {k1 + k2: 1}

    def _conj_key(self, k):
        return k

    @staticmethod
    def _u_degree(k):
        return k

    @staticmethod
    def _u_sort_key(k):
        return (-k,)

    @staticmethod
    def _u_monomial_str(k):
        return _pow_str("x", k)

    @staticmethod
    def _u_basis_keys(max_degree):
        return list(range(max_degree + 1))


class _PolyXXbarMixin:
    """Underlying level Z[x, conj(x)] on an underlying generator."""

    def _underlying_basis_mul(self, k1, k2):
        return {(k1[0] + k2[0], k1[1] + k2[1]): 1}

    def _conj_key(self, k):
        return (k[1], k[0])

    @staticmethod
    def _u_degree(k):
        return k[0] + k[1]

    @staticmethod
    def _u_sort_key(k):
        return (-(k[0] + k[1]), -k[0])

    @staticmethod
    def _u_monomial_str(k):
        parts = [p for p in (_pow_str("x", k[0]), _pow_str("conj(x)", k[1])) if p]
        return "*".join(parts) if parts else None

    @staticmethod
    def _u_basis_keys(max_degree):
        return [(i, j) for i in range(max_degree + 1)
                for j in range(max_degree + 1 - i)]


class FreeGreenFixed(_PolyXMixin, _FreeFunctor):
    """Free Green functor on one fixed generator.

    Fixed level: combinations of x^i and t*x^i with t*t = 2t; underlying
    level: Z[x] with x the restriction of the generator.  res(t*x^i) =
    2x^i, tr(x^i) = t*x^i, conj is the identity.
    """

    name = "free green functor on a fixed generator"
    generator_level = FIXED

    def one(self, level):
        return ((("m", 0), 1),) if level == FIXED else ((0, 1),)

    def generator(self):
        return self.from_key(FIXED, ("m", 1))

    def t_class(self):
        return self.from_key(FIXED, ("t", 0))

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "m" and k2[0] == "m":
            return {("m", k1[1] + k2[1]): 1}
        if k1[0] == "t" and k2[0] == "t":
            return {("t", k1[1] + k2[1]): 2}
        return {("t", k1[1] + k2[1]): 1}

    def _res_key(self, k):
        return {k[1]: 2 if k[0] == "t" else 1}

    def _tr_key(self, k):
        return ("t", k)

    def degree(self, level, k):
        return k[1] if level == FIXED else self._u_degree(k)

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return self._u_sort_key(k)
        return (-k[1], 0 if k[0] == "m" else 1)

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            return self._u_monomial_str(k)
        xpart = _pow_str("x", k[1])
        if k[0] == "m":
            return xpart
        return "*".join(p for p in ("t", xpart) if p)

    def basis_keys(self, level, max_degree):
        if level == UNDERLYING:
            return self._u_basis_keys(max_degree)
        return ([("m", i) for i in range(max_degree + 1)]
                + [("t", i) for i in range(max_degree + 1)])


class FreeGreenUnderlying(_PolyXXbarMixin, _FreeFunctor):
    """Free Green functor on one underlying generator.

    Fixed level: the unit together with transfer classes t_{i,j} (i >= j,
    t_{0,0} = t) multiplying by t_{i,j}*t_{k,l} = t_{i+k,j+l} + t_{i+l,j+k};
    underlying level Z[x, conj(x)].  res(t_{i,j}) = x^i*conj(x)^j +
    x^j*conj(x)^i and tr(x^i*conj(x)^j) = t_{i,j}.
    """

    name = "free green functor on an underlying generator"
    generator_level = UNDERLYING

    def one(self, level):
        return ((("1",), 1),) if level == FIXED else (((0, 0), 1),)

    def generator(self):
        return self.from_key(UNDERLYING, (1, 0))

    def t_class(self):
        return self.from_key(FIXED, ("t", 0, 0))

    def t_ij(self, i, j):
        return self.from_key(FIXED, ("t", max(i, j), min(i, j)))

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "1":
            return {k2: 1}
        if k2[0] == "1":
            return {k1: 1}
        i, j = k1[1], k1[2]
        k, l = k2[1], k2[2]
        out = {}
        for a, b in ((i + k, j + l), (i + l, j + k)):
            key = ("t", max(a, b), min(a, b))
            out[key] = out.get(key, 0) + 1
        return out

    def _res_key(self, k):
        if k[0] == "1":
            return {(0, 0): 1}
        out = {}
        for pair in ((k[1], k[2]), (k[2], k[1])):
            out[pair] = out.get(pair, 0) + 1
        return out

    def _tr_key(self, k):
        return ("t", max(k), min(k))

    def degree(self, level, k):
        if level == UNDERLYING:
            return self._u_degree(k)
        return 0 if k[0] == "1" else k[1] + k[2]

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return self._u_sort_key(k)
        if k[0] == "1":
            return (0, 0)
        return (-(k[1] + k[2]), 1, -k[1])

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            return self._u_monomial_str(k)
        if k[0] == "1":
            return None
        if k[1] == 0 and k[2] == 0:
            return "t"
        return f"t_{{{k[1]},{k[2]}}}"

    def basis_keys(self, level, max_degree):
        if level == UNDERLYING:
            return self._u_basis_keys(max_degree)
        keys = [("1",)]
        for i in range(max_degree + 1):
            for j in range(i + 1):
                if i + j <= max_degree:
                    keys.append(("t", i, j))
        return keys


class FreeTambaraFixed(_PolyXMixin, _FreeFunctor, TambaraFunctor):
    """Free Tambara functor on one fixed generator.

    Fixed level: combinations of x^a*n^b and t*x^e*n^b, reduced by
    t*x^2 = t*n so that e <= 1; underlying level Z[x].  res sends x to x,
    n to x^2 and t*m to 2*res(m); tr(x^i) = t*x^i reduced; N(x) = n and
    norms of sums unwind by peeling the leading monomial.
    """

    name = "free tambara functor on a fixed generator"
    generator_level = FIXED
    has_norm = True

    def one(self, level):
        return ((("m", 0, 0), 1),) if level == FIXED else ((0, 1),)

    def generator(self):
        return self.from_key(FIXED, ("m", 1, 0))

    def norm_class(self):
        return self.from_key(FIXED, ("m", 0, 1))

    def t_class(self):
        return self.from_key(FIXED, ("t", 0, 0))

    @staticmethod
    def _reduce_t(i, b):
        # t*x^i*n^b with i folded down by t*x^2 = t*n
        return ("t", i % 2, b + i // 2)

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "m" and k2[0] == "m":
            return {("m", k1[1] + k2[1], k1[2] + k2[2]): 1}
        if k1[0] == "t" and k2[0] == "t":
            return {self._reduce_t(k1[1] + k2[1], k1[2] + k2[2]): 2}
        return {self._reduce_t(k1[1] + k2[1], k1[2] + k2[2]): 1}

    def _res_key(self, k):
        if k[0] == "m":
            return {k[1] + 2 * k[2]: 1}
        return {k[1] + 2 * k[2]: 2}

    def _tr_key(self, k):
        return self._reduce_t(k, 0)

    def norm(self, u):
        """Norm Z[x] -> fixed level: peel the leading monomial ax^k off and
        apply N(ax^k + p) = N(a)*n^k + N(p) + t*(a*x^k*p)."""
        terms = sorted(u, key=lambda kc: -kc[0])
        if not terms:
            return ()
        k, a = terms[0]
        rest = tuple(terms[1:])
        na, nat = _burnside_int_norm(a)
        head = _freeze({("m", 0, k): na, self._reduce_t(0, k): nat})
        if not rest:
            return head
        cross_poly = _combo_mul(((k, a),), rest, self._underlying_basis_mul)
        cross = {}
        for i, c in cross_poly:
            key = self._reduce_t(i, 0)
            cross[key] = cross.get(key, 0) + c
        return _combo_add(_combo_add(head, self.norm(rest)), _freeze(cross))

    def degree(self, level, k):
        if level == UNDERLYING:
            return self._u_degree(k)
        return k[1] + 2 * k[2]

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return self._u_sort_key(k)
        return (-(k[1] + 2 * k[2]), 0 if k[0] == "m" else 1, -k[1])

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            return self._u_monomial_str(k)
        parts = []
        if k[0] == "t":
            parts.append("t")
        parts.extend(p for p in (_pow_str("x", k[1]), _pow_str("n", k[2])) if p)
        return "*".join(parts) if parts else None

    def basis_keys(self, level, max_degree):
        if level == UNDERLYING:
            return self._u_basis_keys(max_degree)
        keys = []
        for b in range(max_degree // 2 + 1):
            for a in range(max_degree - 2 * b + 1):
                keys.append(("m", a, b))
            for e in (0, 1):
                if e + 2 * b <= max_degree:
                    keys.append(("t", e, b))
        return keys


class FreeTambaraUnderlying(_PolyXXbarMixin, _FreeFunctor, TambaraFunctor):
    """Free Tambara functor on one underlying generator.

    Fixed level: combinations of n^a and n^a*t_i (t_0 = t) with
    t_i*t_j = t_{i+j} + n^min(i,j)*t_|i-j|; underlying level Z[x, conj(x)].
    res(n) = x*conj(x), res(t_i) = x^i + conj(x)^i,
    tr(x^i*conj(x)^j) = n^min(i,j)*t_|i-j|, and N(x) = N(conj(x)) = n.
    """

    name = "free tambara functor on an underlying generator"
    generator_level = UNDERLYING
    has_norm = True

    def one(self, level):
        return ((("n", 0), 1),) if level == FIXED else (((0, 0), 1),)

    def generator(self):
        return self.from_key(UNDERLYING, (1, 0))

    def norm_class(self):
        return self.from_key(FIXED, ("n", 1))

    def t_class(self):
        return self.from_key(FIXED, ("nt", 0, 0))

    def t_i(self, i):
        return self.from_key(FIXED, ("nt", 0, i))

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "n" and k2[0] == "n":
            return {("n", k1[1] + k2[1]): 1}
        if k1[0] == "n":
            return {("nt", k1[1] + k2[1], k2[2]): 1}
        if k2[0] == "n":
            return {("nt", k1[1] + k2[1], k1[2]): 1}
        a, i = k1[1], k1[2]
        b, j = k2[1], k2[2]
        out = {}
        for key in (("nt", a + b, i + j), ("nt", a + b + min(i, j), abs(i - j))):
            out[key] = out.get(key, 0) + 1
        return out

    def _res_key(self, k):
        if k[0] == "n":
            return {(k[1], k[1]): 1}
        a, i = k[1], k[2]
        out = {}
        for pair in ((a + i, a), (a, a + i)):
            out[pair] = out.get(pair, 0) + 1
        return out

    def _tr_key(self, k):
        i, j = k
        return ("nt", min(i, j), abs(i - j))

    def norm(self, u):
        """Norm Z[x, conj(x)] -> fixed level, one monomial at a time:
        N(c*x^i*conj(x)^j) = N(c)*n^(i+j) plus the transfer cross terms
        tr(u_a * conj(u_b)) over unordered pairs of monomials."""
        terms = list(u)
        out = ()
        for (i, j), c in terms:
            nc, nct = _burnside_int_norm(c)
            out = _combo_add(out, _freeze({("n", i + j): nc,
                                           ("nt", i + j, 0): nct}))
        for a in range(len(terms)):
            for b in range(a + 1, len(terms)):
                cross = _combo_mul((terms[a],), self.conj((terms[b],)),
                                   self._underlying_basis_mul)
                out = _combo_add(out, self.tr(cross))
        return out

    def degree(self, level, k):
        if level == UNDERLYING:
            return self._u_degree(k)
        return 2 * k[1] if k[0] == "n" else 2 * k[1] + k[2]

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return self._u_sort_key(k)
        if k[0] == "n":
            return (-2 * k[1], 0)
        return (-(2 * k[1] + k[2]), 1, -k[1])

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            return self._u_monomial_str(k)
        if k[0] == "n":
            return _pow_str("n", k[1])
        npart = _pow_str("n", k[1])
        tpart = "t" if k[2] == 0 else f"t_{k[2]}"
        return "*".join(p for p in (npart, tpart) if p)

    def basis_keys(self, level, max_degree):
        if level == UNDERLYING:
            return self._u_basis_keys(max_degree)
        keys = []
        for a in range(max_degree // 2 + 1):
            keys.append(("n", a))
            for i in range(max_degree - 2 * a + 1):
                keys.append(("nt", a, i))
        return keys


FREE_GREEN_FIXED = FreeGreenFixed()
FREE_GREEN_UNDERLYING = FreeGreenUnderlying()
FREE_TAMBARA_FIXED = FreeTambaraFixed()
FREE_TAMBARA_UNDERLYING = FreeTambaraUnderlying()


# --- two-generator doubles ----------------------------------------------------

class FreeTambaraFixedPair(_FreeFunctor, TambaraFunctor):
    """Free Tambara functor on two fixed generators y, z: the target of the
    fixed-level co-addition.  Same normal form as the one-generator case
    with bigraded exponents: monomials y^ay*z^az*n_y^by*n_z^bz and
    t*y^ey*z^ez*n_y^by*n_z^bz with t*y^2 = t*n_y and t*z^2 = t*n_z."""

    name = "free tambara functor on two fixed generators"
    generator_level = FIXED
    has_norm = True

    def one(self, level):
        return ((("m", 0, 0, 0, 0), 1),) if level == FIXED else (((0, 0), 1),)

    def gen_y(self):
        return self.from_key(FIXED, ("m", 1, 0, 0, 0))

    def gen_z(self):
        return self.from_key(FIXED, ("m", 0, 1, 0, 0))

    def norm_y(self):
        return self.from_key(FIXED, ("m", 0, 0, 1, 0))

    def norm_z(self):
        return self.from_key(FIXED, ("m", 0, 0, 0, 1))

    def t_class(self):
        return self.from_key(FIXED, ("t", 0, 0, 0, 0))

    @staticmethod
    def _reduce_t(iy, iz, by, bz):
        return ("t", iy % 2, iz % 2, by + iy // 2, bz + iz // 2)

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "m" and k2[0] == "m":
            return {("m", k1[1] + k2[1], k1[2] + k2[2],
                     k1[3] + k2[3], k1[4] + k2[4]): 1}
        coeff = 2 if (k1[0] == "t" and k2[0] == "t") else 1
        return {self._reduce_t(k1[1] + k2[1], k1[2] + k2[2],
                               k1[3] + k2[3], k1[4] + k2[4]): coeff}

    def _underlying_basis_mul(self, k1, k2):
        return {(k1[0] + k2[0], k1[1] + k2[1]): 1}

    def _conj_key(self, k):
        return k

    def _res_key(self, k):
        mult = 2 if k[0] == "t" else 1
        return {(k[1] + 2 * k[3], k[2] + 2 * k[4]): mult}

    def _tr_key(self, k):
        return self._reduce_t(k[0], k[1], 0, 0)

    def norm(self, u):
        terms = sorted(u, key=lambda kc: (-(kc[0][0] + kc[0][1]), kc[0]))
        if not terms:
            return ()
        (iy, iz), a = terms[0]
        rest = tuple(terms[1:])
        na, nat = _burnside_int_norm(a)
        head = _freeze({("m", 0, 0, iy, iz): na, self._reduce_t(0, 0, iy, iz): nat})
        if not rest:
            return head
        cross_poly = _combo_mul((((iy, iz), a),), rest, self._underlying_basis_mul)
        cross = {}
        for (jy, jz), c in cross_poly:
            key = self._reduce_t(jy, jz, 0, 0)
            cross[key] = cross.get(key, 0) + c
        return _combo_add(_combo_add(head, self.norm(rest)), _freeze(cross))

    def degree(self, level, k):
        if level == UNDERLYING:
            return k[0] + k[1]
        return k[1] + k[2] + 2 * (k[3] + k[4])

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return (-(k[0] + k[1]), -k[0])
        return (-self.degree(FIXED, k), 0 if k[0] == "m" else 1,
                -k[1], -k[2], -k[3], -k[4])

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            parts = [p for p in (_pow_str("y", k[0]), _pow_str("z", k[1])) if p]
            return "*".join(parts) if parts else None
        parts = ["t"] if k[0] == "t" else []
        parts.extend(p for p in (_pow_str("y", k[1]), _pow_str("z", k[2]),
                                 _pow_str("n_y", k[3]), _pow_str("n_z", k[4])) if p)
        return "*".join(parts) if parts else None

    def basis_keys(self, level, max_degree):
        raise CapabilityError("two-generator functor exposes no basis listing")


class FreeTambaraUnderlyingPair(_FreeFunctor, TambaraFunctor):
    """Free Tambara functor on two underlying generators y, z: the target of
    the underlying co-addition.  Underlying level Z[y, conj(y), z, conj(z)];
    fixed level spanned by n_y^a*n_z^b and n_y^a*n_z^b*tr(w) with w a
    monomial reduced so that min(y-exponents) = min(z-exponents) = 0 and w
    is taken up to conjugation."""

    name = "free tambara functor on two underlying generators"
    generator_level = UNDERLYING
    has_norm = True

    def one(self, level):
        return ((("n", 0, 0), 1),) if level == FIXED else (((0, 0, 0, 0), 1),)

    def gen_y(self):
        return self.from_key(UNDERLYING, (1, 0, 0, 0))

    def gen_z(self):
        return self.from_key(UNDERLYING, (0, 0, 1, 0))

    def norm_y(self):
        return self.from_key(FIXED, ("n", 1, 0))

    def norm_z(self):
        return self.from_key(FIXED, ("n", 0, 1))

    def _underlying_basis_mul(self, k1, k2):
        return {tuple(a + b for a, b in zip(k1, k2)): 1}

    def _conj_key(self, k):
        return (k[1], k[0], k[3], k[2])

    def _tr_key(self, k):
        iy, jy, iz, jz = k
        my, mz = min(iy, jy), min(iz, jz)
        w = (iy - my, jy - my, iz - mz, jz - mz)
        w = min(w, self._conj_key(w))
        return ("t", my, mz, w)

    def _fixed_basis_mul(self, k1, k2):
        if k1[0] == "n" and k2[0] == "n":
            return {("n", k1[1] + k2[1], k1[2] + k2[2]): 1}
        if k1[0] == "n" or k2[0] == "n":
            n_key, t_key = (k1, k2) if k1[0] == "n" else (k2, k1)
            return {("t", t_key[1] + n_key[1], t_key[2] + n_key[2], t_key[3]): 1}
        out = {}
        for v in (k2[3], self._conj_key(k2[3])):
            prod = tuple(a + b for a, b in zip(k1[3], v))
            key = self._tr_key(prod)
            bumped = ("t", key[1] + k1[1] + k2[1], key[2] + k1[2] + k2[2], key[3])
            out[bumped] = out.get(bumped, 0) + 1
        return out

    def _res_key(self, k):
        if k[0] == "n":
            return {(k[1], k[1], k[2], k[2]): 1}
        a, b, w = k[1], k[2], k[3]
        out = {}
        for v in (w, self._conj_key(w)):
            pair = (v[0] + a, v[1] + a, v[2] + b, v[3] + b)
            out[pair] = out.get(pair, 0) + 1
        return out

    def norm(self, u):
        terms = list(u)
        out = ()
        for (iy, jy, iz, jz), c in terms:
            nc, nct = _burnside_int_norm(c)
            base = ("n", iy + jy, iz + jz)
            tbase = ("t", iy + jy, iz + jz, (0, 0, 0, 0))
            out = _combo_add(out, _freeze({base: nc, tbase: nct}))
        for a in range(len(terms)):
            for b in range(a + 1, len(terms)):
                cross = _combo_mul((terms[a],), self.conj((terms[b],)),
                                   self._underlying_basis_mul)
                out = _combo_add(out, self.tr(cross))
        return out

    def degree(self, level, k):
        if level == UNDERLYING:
            return sum(k)
        if k[0] == "n":
            return 2 * (k[1] + k[2])
        return 2 * (k[1] + k[2]) + sum(k[3])

    def _sort_key(self, level, k):
        if level == UNDERLYING:
            return (-sum(k), -k[0], -k[2])
        return (-self.degree(FIXED, k), 0 if k[0] == "n" else 1, k)

    def _monomial_str(self, level, k):
        if level == UNDERLYING:
            parts = [p for p in (_pow_str("y", k[0]), _pow_str("conj(y)", k[1]),
                                 _pow_str("z", k[2]), _pow_str("conj(z)", k[3])) if p]
            return "*".join(parts) if parts else None
        if k[0] == "n":
            parts = [p for p in (_pow_str("n_y", k[1]), _pow_str("n_z", k[2])) if p]
            return "*".join(parts) if parts else None
        w = k[3]
        wparts = [p for p in (_pow_str("y", w[0]), _pow_str("conj(y)", w[1]),
                              _pow_str("z", w[2]), _pow_str("conj(z)", w[3])) if p]
        inner = "*".join(wparts) if wparts else "1"
        parts = [p for p in (_pow_str("n_y", k[1]), _pow_str("n_z", k[2])) if p]
        parts.append(f"tr({inner})")
        return "*".join(parts)

    def basis_keys(self, level, max_degree):
        raise CapabilityError("two-generator functor exposes no basis listing")


FREE_TAMBARA_FIXED_PAIR = FreeTambaraFixedPair()
FREE_TAMBARA_UNDERLYING_PAIR = FreeTambaraUnderlyingPair()


# --- hom extension ------------------------------------------------------------

@dataclass(frozen=True)
class FreeHom:
    """Green-functor map out of a free functor, given by generator images."""

    source: _FreeFunctor
    target: GreenFunctor
    xi: object
    nu: object

    def map_element(self, level, elem):
        acc = self.target.zero(level)
        for key, coeff in elem:
            img = self.source._basis_image(key, level, self.xi, self.nu,
                                           self.target)
            acc = self.target.add(level, acc, self.target.smul(level, coeff, img))
        return acc

    def fixed(self, elem):
        return self.map_element(FIXED, elem)

    def underlying(self, elem):
        return self.map_element(UNDERLYING, elem)


def _basis_image_green_fixed(self, key, level, xi, nu, target):
    if level == UNDERLYING:
        return target.pow(UNDERLYING, target.res(xi), key)
    if key[0] == "m":
        return target.pow(FIXED, xi, key[1])
    return target.tr(target.pow(UNDERLYING, target.res(xi), key[1]))


def _basis_image_green_underlying(self, key, level, xi, nu, target):
    if level == UNDERLYING:
        return target.mul(UNDERLYING, target.pow(UNDERLYING, xi, key[0]),
                          target.pow(UNDERLYING, target.conj(xi), key[1]))
    if key[0] == "1":
        return target.one(FIXED)
    return target.tr(target.mul(
        UNDERLYING, target.pow(UNDERLYING, xi, key[1]),
        target.pow(UNDERLYING, target.conj(xi), key[2])))


def _basis_image_tambara_fixed(self, key, level, xi, nu, target):
    if level == UNDERLYING:
        return target.pow(UNDERLYING, target.res(xi), key)
    body = target.mul(FIXED, target.pow(FIXED, xi, key[1]),
                      target.pow(FIXED, nu, key[2]))
    if key[0] == "m":
        return body
    return target.tr(target.res(body))


def _basis_image_tambara_underlying(self, key, level, xi, nu, target):
    if level == UNDERLYING:
        return target.mul(UNDERLYING, target.pow(UNDERLYING, xi, key[0]),
                          target.pow(UNDERLYING, target.conj(xi), key[1]))
    npart = target.pow(FIXED, nu, key[1])
    if key[0] == "n":
        return npart
    return target.mul(FIXED, npart,
                      target.tr(target.pow(UNDERLYING, xi, key[2])))


FreeGreenFixed._basis_image = _basis_image_green_fixed
FreeGreenUnderlying._basis_image = _basis_image_green_underlying
FreeTambaraFixed._basis_image = _basis_image_tambara_fixed
FreeTambaraUnderlying._basis_image = _basis_image_tambara_underlying


def green_hom_extend(source: _FreeFunctor, images: dict,
                     target: GreenFunctor) -> FreeHom:
    """Extend generator images to a Green-functor map out of a free functor.

    Free Green sources take only {"x": xi}.  Restricted free Tambara sources
    take {"x": xi, "n": nu} and must satisfy the pushout compatibility
    res(nu) = res(xi)^2 (fixed generator) or res(nu) = xi*conj(xi)
    (underlying generator)."""
    if "x" not in images:
        raise MembershipError("generator image 'x' is required")
    xi = images["x"]
    nu = images.get("n")
    if isinstance(source, FreeTambaraFixed):
        if nu is None:
            raise MembershipError("restricted free tambara source needs 'n'")
        lhs = target.res(nu)
        rhs = target.pow(UNDERLYING, target.res(xi), 2)
        if not target.eq(UNDERLYING, lhs, rhs):
            raise MembershipError("images violate res(n) = res(x)^2")
    elif isinstance(source, FreeTambaraUnderlying):
        if nu is None:
            raise MembershipError("restricted free tambara source needs 'n'")
        lhs = target.res(nu)
        rhs = target.mul(UNDERLYING, xi, target.conj(xi))
        if not target.eq(UNDERLYING, lhs, rhs):
            raise MembershipError("images violate res(n) = x*conj(x)")
    elif not isinstance(source, (FreeGreenFixed, FreeGreenUnderlying)):
        raise InputMismatchError("unsupported hom source")
    return FreeHom(source, target, xi, nu)


def yoneda_check(target: TambaraFunctor, s, level, degree_bound: int) -> Report:
    """Check that the evaluation map classified by an element is a map of
    Tambara functors on all basis elements up to a degree bound.

    The evaluator sends the generator to s and the norm class to
    N(res s) (fixed s) or N(s) (underlying s); the report verifies it
    commutes with add, mul, res, tr and norm."""
    if level == FIXED:
        source = FREE_TAMBARA_FIXED
        nu = target.norm(target.res(s))
    else:
        source = FREE_TAMBARA_UNDERLYING
        nu = target.norm(s)
    hom = green_hom_extend(source, {"x": s, "n": nu}, target)
    report = Report(subject=f"yoneda check at {target.render(level, s)} ({level})")

    fixed_keys = source.basis_keys(FIXED, degree_bound)
    under_keys = source.basis_keys(UNDERLYING, degree_bound)
    pools = {FIXED: [source.from_key(FIXED, k) for k in fixed_keys],
             UNDERLYING: [source.from_key(UNDERLYING, k) for k in under_keys]}

    for lvl, pool in pools.items():
        for e1 in pool:
            for e2 in pool:
                report.checked += 2
                lhs = hom.map_element(lvl, source.mul(lvl, e1, e2))
                rhs = target.mul(lvl, hom.map_element(lvl, e1),
                                 hom.map_element(lvl, e2))
                if not target.eq(lvl, lhs, rhs):
                    report.record(f"mul[{lvl}]",
                                  (source.render(lvl, e1), source.render(lvl, e2)),
                                  f"{target.render(lvl, lhs)} != {target.render(lvl, rhs)}")
                lhs = hom.map_element(lvl, source.add(lvl, e1, e2))
                rhs = target.add(lvl, hom.map_element(lvl, e1),
                                 hom.map_element(lvl, e2))
                if not target.eq(lvl, lhs, rhs):
                    report.record(f"add[{lvl}]",
                                  (source.render(lvl, e1), source.render(lvl, e2)),
                                  f"{target.render(lvl, lhs)} != {target.render(lvl, rhs)}")
    for e in pools[FIXED]:
        report.checked += 1
        lhs = hom.map_element(UNDERLYING, source.res(e))
        rhs = target.res(hom.map_element(FIXED, e))
        if not target.eq(UNDERLYING, lhs, rhs):
            report.record("res", (source.render(FIXED, e),),
                          f"{target.render(UNDERLYING, lhs)} != {target.render(UNDERLYING, rhs)}")
    for e in pools[UNDERLYING]:
        report.checked += 2
        lhs = hom.map_element(FIXED, source.tr(e))
        rhs = target.tr(hom.map_element(UNDERLYING, e))
        if not target.eq(FIXED, lhs, rhs):
            report.record("tr", (source.render(UNDERLYING, e),),
                          f"{target.render(FIXED, lhs)} != {target.render(FIXED, rhs)}")
        lhs = hom.map_element(FIXED, source.norm(e))
        rhs = target.norm(hom.map_element(UNDERLYING, e))
        if not target.eq(FIXED, lhs, rhs):
            report.record("norm", (source.render(UNDERLYING, e),),
                          f"{target.render(FIXED, lhs)} != {target.render(FIXED, rhs)}")
    return report.finalize()


# --- representing bispans ------------------------------------------------------

def _orbits_to_c2(count: int) -> GMap:
    """The map from `count` free orbits onto C2 sending each orbit
    representative to the base point."""
    src = GSet(0, count)
    return gmap_from_reps(src, FREE_ORBIT, (), [("o", 0, 0)] * count)


def _twisted_fold(identities: int, twists: int) -> GMap:
    """Map from identities + twists free orbits onto C2, the identity on the
    first block and the group generator on the second."""
    src = GSet(0, identities + twists)
    reps = [("o", 0, 0)] * identities + [("o", 0, 1)] * twists
    return gmap_from_reps(src, FREE_ORBIT, (), reps)


def _everything_to_point(src: GSet) -> GMap:
    return gmap_from_reps(src, POINT, [("f", 0)] * src.fixed,
                          [("f", 0)] * src.free)


def basis_to_bispan(source: _FreeFunctor, level, key) -> bispans.Bispan:
    """The canonical bispan representing one basis monomial.

    The bispan runs from the generator's orbit to the orbit of the requested
    level; evaluating it on any functor at the generator recovers the
    monomial's image under the classified map."""
    trivial = IndexingSystem.TRIVIAL
    complete = IndexingSystem.COMPLETE

    if isinstance(source, FreeGreenFixed):
        if level == FIXED:
            if key[0] == "m":
                u = GSet(key[1], 0)
                return bispans.Bispan(_everything_to_point(u),
                                      _everything_to_point(u),
                                      identity_map(POINT), trivial)
            u = GSet(0, key[1])
            return bispans.Bispan(_everything_to_point(u), _orbits_to_c2(key[1]),
                                  quotient_map(), trivial)
        u = GSet(0, key)
        return bispans.Bispan(_everything_to_point(u), _orbits_to_c2(key),
                              identity_map(FREE_ORBIT), trivial)

    if isinstance(source, FreeGreenUnderlying):
        if level == FIXED:
            if key[0] == "1":
                return bispans.Bispan(
                    GMap(GSet(0, 0), FREE_ORBIT, {}),
                    _everything_to_point(GSet(0, 0)),
                    identity_map(POINT), trivial)
            i, j = key[1], key[2]
            return bispans.Bispan(_orbits_to_c2(i + j), _twisted_fold(i, j),
                                  quotient_map(), trivial)
        i, j = key
        return bispans.Bispan(_orbits_to_c2(i + j), _twisted_fold(i, j),
                              identity_map(FREE_ORBIT), trivial)

    if isinstance(source, FreeTambaraFixed):
        if level == FIXED:
            if key[0] == "m":
                a, b = key[1], key[2]
                u = GSet(a, b)
                return bispans.Bispan(_everything_to_point(u),
                                      _everything_to_point(u),
                                      identity_map(POINT), complete)
            i = key[1] + 2 * key[2]
            u = GSet(0, i)
            return bispans.Bispan(_everything_to_point(u), _orbits_to_c2(i),
                                  quotient_map(), complete)
        u = GSet(0, key)
        return bispans.Bispan(_everything_to_point(u), _orbits_to_c2(key),
                              identity_map(FREE_ORBIT), complete)

    if isinstance(source, FreeTambaraUnderlying):
        if level == FIXED:
            if key[0] == "n":
                a = key[1]
                return bispans.Bispan(_orbits_to_c2(a),
                                      _everything_to_point(GSet(0, a)),
                                      identity_map(POINT), complete)
            a, i = key[1], key[2]
            return bispans.Bispan(_orbits_to_c2(2 * a + i),
                                  _twisted_fold(a + i, a),
                                  quotient_map(), complete)
        i, j = key
        return bispans.Bispan(_orbits_to_c2(i + j), _twisted_fold(i, j),
                              identity_map(FREE_ORBIT), complete)

    raise InputMismatchError("no representing bispan for this source")


# --- co-structure images --------------------------------------------------------

@dataclass(frozen=True)
class ComapImages:
    """Images of the pushout generators x and n under a co-structure map."""

    kind: str
    target: GreenFunctor
    x_image: tuple  # (level, element)
    n_image: tuple


def comap_images(kind: str) -> ComapImages:
    """Generator images of the co-restriction, co-norm, co-transfer and the
    two co-additions, in the pushout presentation of the free functors."""
    ftf, ftu = FREE_TAMBARA_FIXED, FREE_TAMBARA_UNDERLYING
    if kind == "coR":
        return ComapImages(kind, ftf,
                           (UNDERLYING, ftf.res(ftf.generator())),
                           (FIXED, ftf.norm_class()))
    if kind == "coN":
        return ComapImages(kind, ftu,
                           (FIXED, ftu.norm_class()),
                           (FIXED, ftu.mul(FIXED, ftu.norm_class(),
                                           ftu.norm_class())))
    if kind == "coT":
        n = ftu.norm_class()
        n_img = ftu.add(FIXED, ftu.smul(FIXED, 2, n), ftu.t_i(2))
        return ComapImages(kind, ftu, (FIXED, ftu.t_i(1)), (FIXED, n_img))
    if kind == "coAddFixed":
        pair = FREE_TAMBARA_FIXED_PAIR
        x_img = pair.add(FIXED, pair.gen_y(), pair.gen_z())
        cross = pair.mul(FIXED, pair.t_class(),
                         pair.mul(FIXED, pair.gen_y(), pair.gen_z()))
        n_img = pair.add(FIXED, pair.add(FIXED, pair.norm_y(), pair.norm_z()),
                         cross)
        return ComapImages(kind, pair, (FIXED, x_img), (FIXED, n_img))
    if kind == "coAddUnderlying":
        pair = FREE_TAMBARA_UNDERLYING_PAIR
        x_img = pair.add(UNDERLYING, pair.gen_y(), pair.gen_z())
        cross = pair.tr(pair.mul(UNDERLYING, pair.gen_y(),
                                 pair.conj(pair.gen_z())))
        n_img = pair.add(FIXED, pair.add(FIXED, pair.norm_y(), pair.norm_z()),
                         cross)
        return ComapImages(kind, pair, (UNDERLYING, x_img), (FIXED, n_img))
    raise InputMismatchError(f"unknown co-structure map {kind!r}")
