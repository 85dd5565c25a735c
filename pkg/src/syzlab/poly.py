"""Polynomials and free-module vectors over a prime field.

Monomials are packed into Python ints: one 9-bit field per variable (8
data bits plus a guard bit) and a top field holding the total degree.
Multiplying monomials is integer addition, and divisibility is a single
subtract-and-mask.  A module term additionally stores its basis position
above the monomial bits, so ``term + monomial`` multiplies a term.

Elements are plain dicts ``{packed term: coefficient}`` internally; the
``Polynomial`` and ``Vector`` classes wrap them for the public API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_PRIME = 32003
FIELD = 9
DATA = 8
EXP_MAX = (1 << DATA) - 1

LT, EQ, GT = -1, 0, 1


class UsageError(ValueError):
    """Caller violated an operation's precondition."""


@lru_cache(maxsize=64)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise UsageError("field elements over different primes")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.p).inverse()

    def __int__(self):
        return self.value


# --------------------------------------------------------------------------
# polynomial ring with packed monomials


class PolyRing:
    """``F_p[x_1..x_v]`` with a fixed monomial order (``grevlex`` or ``lex``).

    The packing layout depends on the order so that comparing monomials
    reduces to comparing integers.
    """

    def __init__(self, names: Sequence[str], p: int = DEFAULT_PRIME, order: str = "grevlex"):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        if p >= 1 << 31:
            raise UsageError("prime must be below 2**31")
        if order not in ("grevlex", "lex"):
            raise UsageError(f"unknown monomial order {order!r}")
        names = tuple(names)
        if not names:
            raise UsageError("at least one variable is required")
        if len(set(names)) != len(names):
            raise UsageError("duplicate variable names")
        self.names = names
        self.nvars = v = len(names)
        self.p = p
        self.order = order
        # field index of variable k
        if order == "grevlex":
            self._pos = tuple(range(v))
        else:
            self._pos = tuple(v - 1 - k for k in range(v))
        self.var_bits = FIELD * v
        self.shift = FIELD * (v + 1)  # position bits start here
        self.vmask = (1 << self.var_bits) - 1
        self.mono_mask = (1 << self.shift) - 1
        self.guard = sum(1 << (FIELD * k + DATA) for k in range(v + 1))
        self.data_ones = sum(EXP_MAX << (FIELD * k) for k in range(v))
        self._deg_unit = 1 << self.var_bits
        self._var_monos = tuple(self.encode(tuple(int(i == k) for i in range(v))) for k in range(v))

    # -- identity ----------------------------------------------------------
    def signature(self):
        return (self.p, self.names, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"PolyRing(GF({self.p})[{','.join(self.names)}], {self.order})"

    # -- monomial codec ------------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise UsageError("exponent vector has the wrong length")
        m = 0
        deg = 0
        for k, e in enumerate(exps):
            if e < 0 or e > EXP_MAX:
                raise UsageError(f"exponent {e} out of range")
            m |= e << (FIELD * self._pos[k])
            deg += e
        if deg > EXP_MAX:
            raise UsageError(f"degree {deg} exceeds {EXP_MAX}")
        return m | (deg << self.var_bits)

    def decode(self, m: int) -> tuple:
        m &= self.mono_mask
        return tuple((m >> (FIELD * self._pos[k])) & EXP_MAX for k in range(self.nvars))

    def mdeg(self, m: int) -> int:
        return (m >> self.var_bits) & EXP_MAX

    def var(self, k: int) -> int:
        return self._var_monos[k]

    def divides(self, a: int, b: int) -> bool:
        """Monomial (or same-position term) ``a`` divides ``b``."""
        g = self.guard
        return ((b | g) - (a & self.mono_mask)) & g == g

    def mlcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode(tuple(max(x, y) for x, y in zip(ea, eb)))

    def mono_key(self, m: int) -> int:
        if self.order == "grevlex":
            return ((m >> self.var_bits) << self.var_bits) + (self.data_ones - (m & self.vmask))
        return m & self.vmask

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.decode(a), self.decode(b)))

    # -- terms ---------------------------------------------------------------
    def term(self, pos: int, mono: int) -> int:
        return (pos << self.shift) | mono

    def pos(self, t: int) -> int:
        return t >> self.shift

    def mono(self, t: int) -> int:
        return t & self.mono_mask

    # -- convenience -----------------------------------------------------------
    def gens(self):
        return [Polynomial(self, {m: 1}) for m in self._var_monos]

    def one(self):
        return Polynomial(self, {0: 1})

    def zero(self):
        return Polynomial(self, {})

    def const(self, c):
        c = int(c) % self.p
        return Polynomial(self, {0: c} if c else {})

    def monomial(self, exps):
        return Polynomial(self, {self.encode(exps): 1})

    def parse(self, text: str) -> "Polynomial":
        from .dsl.parser import parse_polynomial

        return parse_polynomial(text, self)

    def all_monomials(self, degree: int):
        """Packed monomials of the given total degree, ascending in the order."""
        v = self.nvars
        out = []
        for combo in itertools.combinations_with_replacement(range(v), degree):
            exps = [0] * v
            for k in combo:
                exps[k] += 1
            out.append(self.encode(exps))
        out.sort(key=self.mono_key)
        return out

    def format_mono(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def format_coeff(self, c: int) -> int:
        # symmetric representative reads better
        return c - self.p if c > self.p // 2 else c


# --------------------------------------------------------------------------
# raw dict arithmetic; all helpers return new dicts


def d_add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = (out.get(t, 0) + c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def d_axpy(out: dict, c: int, shift: int, b: dict, p: int):
    """In place: ``out += c * (monomial shift) * b``."""
    for t, a in b.items():
        u = t + shift
        v = (out.get(u, 0) + c * a) % p
        if v:
            out[u] = v
        else:
            out.pop(u, None)


def d_scale(a: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {t: (v * c) % p for t, v in a.items()}


def d_mul_poly(poly: dict, vec: dict, p: int) -> dict:
    """Polynomial (monomial keys) times vector (term keys)."""
    out: dict = {}
    for m, c in poly.items():
        d_axpy(out, c, m, vec, p)
    return out


def d_neg(a: dict, p: int) -> dict:
    return {t: (p - v) % p for t, v in a.items()}


# --------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order plus its extension to free modules.

    ``module`` is ``top`` (term over position), ``pot`` (position over
    term) or ``schreyer``; the Schreyer order compares ``m e_i`` through
    ``m * lead_i`` in the base order, breaking ties by position.
    """

    kind: str = "grevlex"
    module: str = "top"
    base: "ModuleOrder | None" = None
    leads: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise UsageError(f"unknown monomial order {self.kind!r}")
        if self.module not in ("top", "pot", "schreyer"):
            raise UsageError(f"unknown module extension {self.module!r}")
        if self.module == "schreyer" and self.base is None:
            raise UsageError("a Schreyer order needs base order data")


_POS_BITS = 24
_POS_MAX = (1 << _POS_BITS) - 1


class ModuleOrder:
    """Integer sort keys for the terms of one free module."""

    def __init__(self, ring: PolyRing, degrees: Sequence[int], spec: MonomialOrder | None = None):
        spec = spec or MonomialOrder(ring.order)
        if spec.kind != ring.order:
            raise UsageError(f"order {spec.kind} does not match the ring's order {ring.order}")
        self.ring = ring
        self.degrees = tuple(degrees)
        self.spec = spec
        self._kb = ring.var_bits + FIELD + 32
        self._sch_base = spec.base
        self._sch_leads = spec.leads
        if spec.module == "schreyer" and len(spec.leads) != len(self.degrees):
            raise UsageError("Schreyer data must give one lead term per basis element")
        self.key = self._make_key()

    def _make_key(self):
        r = self.ring
        shift, mm, vb = r.shift, r.mono_mask, r.var_bits
        vmask, ones = r.vmask, r.data_ones
        degs = self.degrees
        grevlex = r.order == "grevlex"
        kb = self._kb
        mode = self.spec.module
        if mode == "top":
            if grevlex:
                def key(t):
                    c = t >> shift
                    m = t & mm
                    td = (m >> vb) + degs[c]
                    return (((td << vb) + ones - (m & vmask)) << _POS_BITS) + _POS_MAX - c
            else:
                def key(t):
                    c = t >> shift
                    return ((t & vmask) << _POS_BITS) + _POS_MAX - c
        elif mode == "pot":
            mk = r.mono_key

            def key(t):
                c = t >> shift
                return ((_POS_MAX - c) << kb) + mk(t & mm)
        else:
            base_key = self._sch_base.key
            leads = self._sch_leads

            def key(t):
                c = t >> shift
                return (base_key((t & mm) + leads[c]) << _POS_BITS) + _POS_MAX - c
        return key

    def cmp(self, a: int, b: int) -> int:
        ka, kb_ = self.key(a), self.key(b)
        return (ka > kb_) - (ka < kb_)

    def lead(self, vec: dict) -> int:
        return max(vec, key=self.key)


def monomial_cmp(order: MonomialOrder | str, a: Sequence[int], b: Sequence[int]) -> int:
    """Compare exponent vectors ``a`` and ``b``; returns LT, EQ or GT."""
    if len(a) != len(b):
        raise UsageError("monomials over different variable counts")
    kind = order if isinstance(order, str) else order.kind
    if kind == "lex":
        ka, kb = tuple(a), tuple(b)
    elif kind == "grevlex":
        ka = (sum(a), tuple(-e for e in reversed(a)))
        kb = (sum(b), tuple(-e for e in reversed(b)))
    else:
        raise UsageError(f"unknown monomial order {kind!r}")
    return (ka > kb) - (ka < kb)


# --------------------------------------------------------------------------
# public wrappers


class NonHomogeneous:
    """Marker returned when an element has terms of different degrees."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NonHomogeneous"


NON_HOMOGENEOUS = NonHomogeneous()


class Polynomial:
    """Immutable polynomial; ``terms()`` lists (coeff, exponents) descending."""

    __slots__ = ("ring", "d", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self.d = {m: c % ring.p for m, c in d.items() if c % ring.p}
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[tuple]):
        out: dict = {}
        for c, exps in terms:
            m = ring.encode(exps)
            out[m] = (out.get(m, 0) + int(c)) % ring.p
        return cls(ring, out)

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise UsageError("polynomials over different rings")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, d_add(self.d, other.d, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, d_neg(self.d, self.ring.p))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, d_mul_poly(self.d, other.d, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.ring, d_scale(self.d, int(c), self.ring.p))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.d == other.d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.d.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.d

    def __bool__(self):
        return bool(self.d)

    def sorted_monomials(self):
        return sorted(self.d, key=self.ring.mono_key, reverse=True)

    def terms(self):
        return [(self.d[m], self.ring.decode(m)) for m in self.sorted_monomials()]

    def lead_monomial(self):
        return self.ring.decode(max(self.d, key=self.ring.mono_key)) if self.d else None

    def degree(self):
        """Total degree, ``NON_HOMOGENEOUS`` for mixed degrees, None for zero."""
        degs = {self.ring.mdeg(m) for m in self.d}
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else NON_HOMOGENEOUS

    def is_homogeneous(self) -> bool:
        return self.degree() is not NON_HOMOGENEOUS

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_dict(self.ring, self.d)


def format_dict(ring: PolyRing, d: dict) -> str:
    if not d:
        return "0"
    out = []
    for m in sorted(d, key=ring.mono_key, reverse=True):
        c = ring.format_coeff(d[m])
        mono = ring.format_mono(m)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class FreeModule:
    """``R(-d_1) + ... + R(-d_r)``: ``degrees[i]`` is the degree of ``e_i``."""

    ring: PolyRing
    degrees: tuple

    @property
    def rank(self):
        return len(self.degrees)


class Vector:
    """Element of a free module; wraps ``{packed term: coeff}``."""

    __slots__ = ("module", "d")

    def __init__(self, module: FreeModule, d: dict):
        self.module = module
        p = module.ring.p
        self.d = {t: c % p for t, c in d.items() if c % p}

    @classmethod
    def from_polys(cls, module: FreeModule, comps: Sequence):
        r = module.ring
        if len(comps) != module.rank:
            raise UsageError("wrong number of components")
        d = {}
        for i, f in enumerate(comps):
            if isinstance(f, int):
                f = r.const(f)
            for m, c in f.d.items():
                d[r.term(i, m)] = c
        return cls(module, d)

    def component(self, i) -> Polynomial:
        r = self.module.ring
        return Polynomial(r, {r.mono(t): c for t, c in self.d.items() if r.pos(t) == i})

    def components(self):
        return [self.component(i) for i in range(self.module.rank)]

    def __add__(self, other: "Vector"):
        return Vector(self.module, d_add(self.d, other.d, self.module.ring.p))

    def __sub__(self, other: "Vector"):
        p = self.module.ring.p
        return Vector(self.module, d_add(self.d, d_neg(other.d, p), p))

    def __rmul__(self, f):
        p = self.module.ring.p
        if isinstance(f, int):
            return Vector(self.module, d_scale(self.d, f, p))
        return Vector(self.module, d_mul_poly(f.d, self.d, p))

    def __eq__(self, other):
        return isinstance(other, Vector) and self.module == other.module and self.d == other.d

    def __hash__(self):
        return hash((self.module, frozenset(self.d.items())))

    def is_zero(self):
        return not self.d

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components()) + ")"


def term_degree(ring: PolyRing, degrees: Sequence[int], t: int) -> int:
    return ring.mdeg(t) + degrees[ring.pos(t)]


def vector_degree(ring: PolyRing, degrees: Sequence[int], d: dict):
    degs = {term_degree(ring, degrees, t) for t in d}
    if not degs:
        return None
    return degs.pop() if len(degs) == 1 else NON_HOMOGENEOUS


def homogeneous_degree(e: Vector | Polynomial):
    """Internal degree of a homogeneous element, ``NON_HOMOGENEOUS`` otherwise."""
    if isinstance(e, Polynomial):
        return e.degree()
    return vector_degree(e.module.ring, e.module.degrees, e.d)


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(int(g))
    raise UsageError(f"unknown operation {op!r}")
