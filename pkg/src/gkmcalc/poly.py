"""Exact sparse multivariate polynomial arithmetic over Z and Q.

Polynomials are graded: every generator carries a positive even degree
(degree 2 for lattice coordinates, higher for formal classes).  Exponent
vectors are packed into a single integer key, 16 bits per generator, so a
monomial product is one integer addition.  Coefficients are Python ints
with Fraction appearing only when a division genuinely leaves Z.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1


class PolyError(ValueError):
    pass


class UnmappedGeneratorError(PolyError):
    def __init__(self, name):
        super().__init__(f"no image provided for generator {name!r}")
        self.name = name


class InexactDivisionError(ArithmeticError):
    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def _norm_coeff(c):
    """Collapse Fractions with unit denominator back to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, graded generator symbols of a free polynomial ring."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise PolyError("names and degrees must have equal length")
        if len(set(self.names)) != len(self.names):
            raise PolyError("generator names must be unique")
        for d in self.degrees:
            if d <= 0 or d % 2:
                raise PolyError("generator degrees must be positive and even")

    @staticmethod
    def of(*pairs):
        names, degrees = [], []
        for p in pairs:
            if isinstance(p, str):
                names.append(p)
                degrees.append(2)
            else:
                names.append(p[0])
                degrees.append(p[1])
        return GeneratorSet(tuple(names), tuple(degrees))

    def __len__(self):
        return len(self.names)

    @cached_property
    def _index(self):
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown generator {name!r}") from None

    def degree_of(self, name):
        return self.degrees[self.index(name)]

    def pack(self, exps):
        key = 0
        for i, e in enumerate(exps):
            if e:
                key |= e << (_SHIFT * i)
        return key

    def unpack(self, key):
        out = []
        for _ in range(len(self.names)):
            out.append(key & _MASK)
            key >>= _SHIFT
        return tuple(out)

    def key_degree(self, key):
        deg = 0
        i = 0
        while key:
            deg += (key & _MASK) * self.degrees[i]
            key >>= _SHIFT
            i += 1
        return deg

    def extend(self, *pairs):
        other = GeneratorSet.of(*pairs)
        return GeneratorSet(self.names + other.names, self.degrees + other.degrees)


class Polynomial:
    """Immutable sparse polynomial over a GeneratorSet.

    ``terms`` maps packed exponent keys to nonzero int/Fraction coefficients.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens, terms=None):
        object.__setattr__(self, "gens", gens)
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _norm_coeff(c)
                if c:
                    clean[k] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, gens, terms):
        """Internal constructor; caller guarantees normalized nonzero coeffs."""
        self = object.__new__(cls)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def zero(cls, gens):
        return cls._raw(gens, {})

    @classmethod
    def const(cls, gens, c):
        c = _norm_coeff(c)
        return cls._raw(gens, {0: c} if c else {})

    @classmethod
    def gen(cls, gens, name, power=1):
        return cls._raw(gens, {power << (_SHIFT * gens.index(name)): 1})

    @classmethod
    def from_exps(cls, gens, pairs):
        terms = {}
        for exps, c in pairs:
            k = gens.pack(exps)
            terms[k] = terms.get(k, 0) + c
        return cls(gens, terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.gens, other)
        return isinstance(other, Polynomial) and self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.gens, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.gens != other.gens:
            raise PolyError("generator sets differ")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = _norm_coeff(out.get(k, 0) + c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Polynomial._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.gens, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.gens, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return Polynomial.zero(self.gens)
            return Polynomial._raw(self.gens, {k: _norm_coeff(c * other) for k, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.gens != other.gens:
            raise PolyError("generator sets differ")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                s = get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        for k in [k for k, c in out.items() if isinstance(c, Fraction) and c.denominator == 1]:
            out[k] = out[k].numerator
        return Polynomial._raw(self.gens, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power")
        result = Polynomial.const(self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def degree(self):
        """Degree of the highest term (graded by generator degrees); 0 for the zero polynomial."""
        kd = self.gens.key_degree
        return max((kd(k) for k in self.terms), default=0)

    def is_homogeneous(self):
        kd = self.gens.key_degree
        degs = {kd(k) for k in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Degree of a homogeneous polynomial; None for 0, error if mixed."""
        kd = self.gens.key_degree
        degs = {kd(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise PolyError("polynomial is not homogeneous")
        return degs.pop()

    def homogeneous_part(self, degree):
        kd = self.gens.key_degree
        return Polynomial._raw(self.gens, {k: c for k, c in self.terms.items() if kd(k) == degree})

    def coefficient_of(self, exps):
        return self.terms.get(self.gens.pack(exps), 0)

    def constant_coefficient(self):
        return self.terms.get(0, 0)

    def is_integral(self):
        return all(not isinstance(c, Fraction) for c in self.terms.values())

    def denominator_lcm(self):
        d = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = d * c.denominator // gcd(d, c.denominator)
        return d

    def max_var_exp(self, name):
        i = self.gens.index(name)
        sh = _SHIFT * i
        return max(((k >> sh) & _MASK for k in self.terms), default=0)

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order as (exps, coeff)."""
        gens = self.gens
        items = [(gens.key_degree(k), gens.unpack(k), c) for k, c in self.terms.items()]
        items.sort(reverse=True)
        return [(e, c) for _, e, c in items]

    def leading(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        gens = self.gens
        best = max(self.terms, key=lambda k: (gens.key_degree(k), gens.unpack(k)))
        return best, self.terms[best]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.gens.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


@dataclass(frozen=True)
class LinearForm:
    """Integer vector over the degree-2 generators of a lattice GeneratorSet."""

    gens: GeneratorSet
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.gens):
            raise PolyError("coefficient vector length mismatch")
        for c in self.coeffs:
            if not isinstance(c, int):
                raise PolyError("LinearForm coefficients must be integers")

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        return LinearForm(self.gens, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return LinearForm(self.gens, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LinearForm(self.gens, tuple(-a for a in self.coeffs))

    def __mul__(self, n):
        return LinearForm(self.gens, tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        g = self.content()
        if g <= 1:
            return self
        return LinearForm(self.gens, tuple(c // g for c in self.coeffs))

    def proportional_to(self, other):
        """True if self = q * other for some rational q != 0."""
        if self.is_zero() or other.is_zero():
            return False
        a, b = self.primitive(), other.primitive()
        return a.coeffs == b.coeffs or a.coeffs == tuple(-c for c in b.coeffs)

    def to_poly(self, gens=None):
        target = gens or self.gens
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                terms[1 << (_SHIFT * target.index(self.gens.names[i]))] = c
        return Polynomial._raw(target, terms)

    def __repr__(self):
        return repr(self.to_poly())


def linear_form(gens, mapping):
    coeffs = [0] * len(gens)
    for name, c in mapping.items():
        coeffs[gens.index(name)] = c
    return LinearForm(gens, tuple(coeffs))


def poly_to_linear_form(f):
    """Extract the LinearForm of a homogeneous degree-2 integral polynomial."""
    coeffs = [0] * len(f.gens)
    for k, c in f.terms.items():
        exps = f.gens.unpack(k)
        positions = [i for i, e in enumerate(exps) if e]
        if len(positions) != 1 or exps[positions[0]] != 1 or f.gens.degrees[positions[0]] != 2:
            raise PolyError("not a linear form in degree-2 generators")
        if isinstance(c, Fraction):
            raise PolyError("linear form has non-integer coefficient")
        coeffs[positions[0]] = c
    return LinearForm(f.gens, tuple(coeffs))


def substitute(f, images, target=None):
    """Graded substitution gen -> Polynomial; unmapped generators pass through by name.

    Every image must be homogeneous of the generator's degree (or zero).  A
    generator occurring in ``f`` that is neither mapped nor present in the
    target set raises UnmappedGeneratorError.
    """
    target = target if target is not None else (next(iter(images.values())).gens if images else f.gens)
    src = f.gens
    n = len(src)
    mapped = [None] * n
    slot_map = [None] * n
    for i, name in enumerate(src.names):
        if name in images:
            img = images[name]
            if img.gens != target:
                raise PolyError(f"image of {name!r} lives in the wrong generator set")
            if img and img.homogeneous_degree() != src.degrees[i]:
                raise PolyError(f"image of {name!r} does not preserve degree")
            mapped[i] = img
        elif name in target._index and target.degrees[target.index(name)] == src.degrees[i]:
            slot_map[i] = target.index(name)

    groups = {}
    for k, c in f.terms.items():
        sig = []
        passkey = 0
        kk = k
        i = 0
        while kk:
            e = kk & _MASK
            if e:
                if mapped[i] is not None:
                    sig.append((i, e))
                elif slot_map[i] is not None:
                    passkey |= e << (_SHIFT * slot_map[i])
                else:
                    raise UnmappedGeneratorError(src.names[i])
            kk >>= _SHIFT
            i += 1
        sig = tuple(sig)
        bucket = groups.setdefault(sig, {})
        bucket[passkey] = bucket.get(passkey, 0) + c

    powcache = {}

    def power(i, e):
        p = powcache.get((i, e))
        if p is None:
            p = mapped[i] ** e
            powcache[(i, e)] = p
        return p

    result = Polynomial.zero(target)
    for sig, bucket in groups.items():
        part = Polynomial(target, bucket)
        for i, e in sig:
            part = part * power(i, e)
        result = result + part
    return result


@dataclass(frozen=True)
class CoefficientHom:
    """Degree-preserving ring homomorphism determined on degree-2 generators.

    Realizes change-of-coefficients maps: each degree-2 source generator is
    sent to a linear form (possibly zero) in the target ring; all other
    generators may be carried across by name.
    """

    source: GeneratorSet
    target: GeneratorSet
    images: dict

    def __post_init__(self):
        for name, img in self.images.items():
            if self.source.degree_of(name) != 2:
                raise PolyError(f"CoefficientHom maps degree-2 generators only, got {name!r}")
            if isinstance(img, LinearForm):
                continue
            if img and (not img.is_homogeneous() or img.homogeneous_degree() != 2):
                raise PolyError(f"image of {name!r} is not a linear form")

    @staticmethod
    def identity(gens):
        return CoefficientHom(gens, gens, {})

    @staticmethod
    def from_matrix(gens, matrix, target=None):
        """Column i of ``matrix`` is the image of generator i (integer entries)."""
        target = target or gens
        images = {}
        for i, name in enumerate(gens.names):
            if gens.degrees[i] != 2:
                continue
            images[name] = LinearForm(target, tuple(int(matrix[j][i]) for j in range(len(target))))
        return CoefficientHom(gens, target, images)

    def _poly_images(self):
        return {
            name: (img.to_poly(self.target) if isinstance(img, LinearForm) else img)
            for name, img in self.images.items()
        }

    def apply(self, f):
        if f.gens != self.source:
            raise PolyError("polynomial not over the source generator set")
        return substitute(f, self._poly_images(), self.target)

    def apply_linear(self, form):
        out = self.apply(form.to_poly(self.source))
        return out

    def compose(self, inner):
        """self o inner (apply inner first)."""
        images = {}
        for name, img in inner.images.items():
            p = img.to_poly(inner.target) if isinstance(img, LinearForm) else img
            images[name] = self.apply(p)
        return CoefficientHom(inner.source, self.target, images)


def substitute_linear(f, hom):
    """Spec-facing alias: apply a coefficient homomorphism to a polynomial."""
    return hom.apply(f)


def divide_exact(f, g):
    """Return q with q*g == f exactly; raise InexactDivisionError otherwise."""
    if not g:
        raise InexactDivisionError("division by zero polynomial")
    if not f:
        return Polynomial.zero(f.gens)
    if f.gens != g.gens:
        raise PolyError("generator sets differ")
    if g.is_homogeneous() and g.homogeneous_degree() == 2 and len(g.terms) <= len(g.gens):
        return _divide_exact_linear(f, g)
    return _divide_exact_general(f, g)


def _divide_exact_linear(f, g):
    """Synthetic division by a linear form a*v - s (s free of v)."""
    gens = f.gens
    pivot = None
    for k, c in g.terms.items():
        i = 0
        kk = k
        while not (kk & _MASK):
            kk >>= _SHIFT
            i += 1
        if pivot is None or abs(c) < abs(pivot[1]) or (abs(c) == abs(pivot[1]) and i < pivot[0]):
            pivot = (i, c)
    i0, a = pivot
    sh = _SHIFT * i0
    s_terms = {k: -c for k, c in g.terms.items() if not (k >> sh) & _MASK}
    s = Polynomial._raw(gens, s_terms)

    layers = {}
    for k, c in f.terms.items():
        e = (k >> sh) & _MASK
        layers.setdefault(e, {})[k - (e << sh)] = c
    top = max(layers)
    quotient = {}
    carry = Polynomial.zero(gens)
    for e in range(top, 0, -1):
        level = Polynomial(gens, layers.get(e, {})) + carry
        q_e = level * Fraction(1, a) if a not in (1, -1) else (level if a == 1 else -level)
        for k, c in q_e.terms.items():
            quotient[k + ((e - 1) << sh)] = c
        carry = q_e * s
    rem = Polynomial(gens, layers.get(0, {})) + carry
    if rem:
        raise InexactDivisionError("inexact division", remainder=rem)
    return Polynomial(gens, quotient)


def _divide_exact_general(f, g):
    gens = f.gens
    kd = gens.key_degree

    def lead(p):
        return max(p.terms, key=lambda k: (kd(k), gens.unpack(k)))

    gk = lead(g)
    gc = g.terms[gk]
    ge = gens.unpack(gk)
    g_rest = [(k, c) for k, c in g.terms.items() if k != gk]
    rem = dict(f.terms)
    quotient = {}
    while rem:
        fk = max(rem, key=lambda k: (kd(k), gens.unpack(k)))
        if any(a < b for a, b in zip(gens.unpack(fk), ge)):
            raise InexactDivisionError("inexact division", remainder=Polynomial(gens, rem))
        qk = fk - gk
        qc = _norm_coeff(Fraction(rem[fk], gc) if gc not in (1, -1) else (rem[fk] if gc == 1 else -rem[fk]))
        quotient[qk] = qc
        del rem[fk]
        for k, c in g_rest:
            kk = k + qk
            s = _norm_coeff(rem.get(kk, 0) - qc * c)
            if s:
                rem[kk] = s
            else:
                rem.pop(kk, None)
    return Polynomial(gens, quotient)


def divisible(f, g):
    try:
        divide_exact(f, g)
        return True
    except InexactDivisionError:
        return False


def elementary_symmetric(k, items, gens=None):
    """e_k of a list of polynomials (or LinearForms); e_0 = 1."""
    if k < 0 or k > len(items):
        raise PolyError(f"elementary symmetric index {k} out of range 0..{len(items)}")
    polys = [x.to_poly(gens) if isinstance(x, LinearForm) else x for x in items]
    g = gens or (polys[0].gens if polys else None)
    if g is None:
        raise PolyError("empty variable list needs an explicit generator set")
    e = [Polynomial.const(g, 1)] + [Polynomial.zero(g) for _ in range(k)]
    for x in polys:
        for j in range(min(k, len(polys)), 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


def all_elementary_symmetric(items, gens=None):
    """[e_0, ..., e_n] in one pass."""
    polys = [x.to_poly(gens) if isinstance(x, LinearForm) else x for x in items]
    g = gens or polys[0].gens
    n = len(polys)
    e = [Polynomial.const(g, 1)] + [Polynomial.zero(g) for _ in range(n)]
    for x in polys:
        for j in range(n, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e


def ck_shift_identity(k, vars, y):
    """Closed form for c_k of {x_i(x_i - y)} over at most five variables.

    Valid whenever the elementary symmetric functions c_{k+3} and beyond
    vanish or fall off the index range, which holds for |vars| <= 5.
    """
    if k < 0 or k > len(vars):
        raise PolyError("index out of range")
    polys = [x.to_poly() if isinstance(x, LinearForm) else x for x in vars]
    g = polys[0].gens
    yp = y.to_poly(g) if isinstance(y, LinearForm) else y
    n = len(polys)
    c = all_elementary_symmetric(polys)

    def cc(j):
        if j < 0 or j > n:
            return Polynomial.zero(g)
        return c[j]

    total = Polynomial.zero(g)
    ypow = Polynomial.const(g, 1)
    for i in range(0, k + 1):
        binom1 = i + 2
        binom2 = -((i + 4) * (i + 3)) // 2 + (i + 2) * (i + 4)
        block = cc(k) * cc(k - i) - binom1 * (cc(k + 1) * cc(k - i - 1)) + binom2 * (cc(k + 2) * cc(k - i - 2))
        sign = -1 if i % 2 else 1
        total = total + sign * ypow * block
        ypow = ypow * yp
    return total


def content(f):
    """gcd of the coefficients of a nonzero integral polynomial."""
    if not f:
        raise PolyError("content of the zero polynomial is undefined")
    g = 0
    for c in f.terms.values():
        if isinstance(c, Fraction):
            raise PolyError("content requires integral coefficients")
        g = gcd(g, c)
    return g


def poly_to_json(f):
    terms = []
    for exps, c in f.sorted_terms():
        frac = Fraction(c)
        terms.append({"exp": list(exps), "num": str(frac.numerator), "den": str(frac.denominator)})
    return {
        "generators": [{"name": n, "degree": d} for n, d in zip(f.gens.names, f.gens.degrees)],
        "terms": terms,
    }


def poly_from_json(data, gens=None):
    if gens is None:
        gens = GeneratorSet(
            tuple(g["name"] for g in data["generators"]),
            tuple(g["degree"] for g in data["generators"]),
        )
    terms = {}
    for t in data["terms"]:
        c = Fraction(int(t["num"]), int(t.get("den", 1)))
        terms[gens.pack(t["exp"])] = c
    return Polynomial(gens, terms)


def poly_dumps(f):
    return json.dumps(poly_to_json(f), separators=(",", ":"))
