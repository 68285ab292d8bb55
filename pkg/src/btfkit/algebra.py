"""Finite abelian groups with characters, and finite fields GF(p^a)."""

import itertools
import re
from functools import cached_property
from math import gcd, pi

import cmath

MAX_GROUP_ORDER = 1024
MAX_FIELD_ORDER = 4096


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n):
    return n >= 2 and _prime_factors(n) == [n]


def is_prime_power(n):
    """Return (p, a) with n = p**a, or None."""
    if n < 2:
        raise ValueError(f"is_prime_power needs n >= 2, got {n}")
    ps = _prime_factors(n)
    if len(ps) != 1:
        return None
    p, a = ps[0], 0
    while n > 1:
        n //= p
        a += 1
    return p, a


class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_k}, elements as tuples of residues.

    Integers are accepted wherever an element is expected for cyclic groups.
    """

    def __init__(self, invariant_factors):
        factors = tuple(int(x) for x in invariant_factors)
        if not factors or any(x < 2 for x in factors):
            raise ValueError(f"invariant factors must all be >= 2: {invariant_factors!r}")
        order = 1
        for x in factors:
            order *= x
        if order > MAX_GROUP_ORDER:
            raise ValueError(f"group order {order} exceeds cap {MAX_GROUP_ORDER}")
        self.factors = factors
        self.order = order

    @classmethod
    def parse(cls, spec):
        """Parse a spec string such as ``"8"`` or ``"2x4"``."""
        parts = str(spec).lower().replace(" ", "").split("x")
        try:
            return cls([int(p) for p in parts])
        except ValueError:
            raise ValueError(f"bad group spec {spec!r}") from None

    @classmethod
    def cyclic(cls, n):
        return cls([n])

    def __repr__(self):
        return f"AbelianGroup({'x'.join(map(str, self.factors))})"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def is_cyclic(self):
        return len(self.factors) == 1

    @cached_property
    def elements(self):
        return list(itertools.product(*(range(x) for x in self.factors)))

    @cached_property
    def _index(self):
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self):
        return (0,) * len(self.factors)

    def element(self, g):
        if isinstance(g, int):
            g = (g,)
        g = tuple(int(x) for x in g)
        if len(g) != len(self.factors) or any(not 0 <= x < n for x, n in zip(g, self.factors)):
            raise ValueError(f"{g!r} is not an element of {self!r}")
        return g

    def index(self, g):
        return self._index[self.element(g)]

    def add(self, g, h):
        return tuple((x + y) % n for x, y, n in zip(g, h, self.factors))

    def neg(self, g):
        return tuple(-x % n for x, n in zip(g, self.factors))

    def sub(self, g, h):
        return tuple((x - y) % n for x, y, n in zip(g, h, self.factors))

    def display(self, g):
        return g[0] if self.is_cyclic else g

    def closure(self, gens):
        """The subgroup generated by ``gens``."""
        H = {self.identity}
        frontier = [self.identity]
        gens = [self.element(g) for g in gens]
        while frontier:
            h = frontier.pop()
            for g in gens:
                x = self.add(h, g)
                if x not in H:
                    H.add(x)
                    frontier.append(x)
        return frozenset(H)

    def is_subgroup(self, A):
        A = {self.element(a) for a in A}
        return self.identity in A and all(self.sub(a, b) in A for a in A for b in A)

    @cached_property
    def subgroups(self):
        """All subgroups, sorted by order then by sorted element tuple."""
        found = {self.closure([g]) for g in self.elements}
        frontier = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for g in self.elements:
                    if g not in H:
                        K = self.closure(list(H) + [g])
                        if K not in found:
                            found.add(K)
                            nxt.append(K)
            frontier = nxt
        return sorted(found, key=lambda H: (len(H), sorted(H)))


def character(G, a, b):
    a, b = G.element(a), G.element(b)
    phase = sum(x * y / n for x, y, n in zip(a, b, G.factors))
    return cmath.exp(2j * pi * phase)


def parse_element_set(text, G):
    """Parse ``"1,2,4"`` (cyclic) or ``"(0,1),(1,1)"`` into sorted elements."""
    text = text.strip()
    if "(" in text:
        items = re.findall(r"\(([^()]*)\)", text)
        elems = [tuple(int(x) for x in item.split(",") if x.strip()) for item in items]
    else:
        elems = [int(x) for x in text.split(",") if x.strip()]
    return sorted({G.element(g) for g in elems})


class FiniteField:
    """GF(p^a) with elements encoded as integers 0 .. p^a - 1.

    The base-p digits of an element are its polynomial coefficients, least
    significant digit = constant term.  Integer order is therefore the
    lexicographic order of coefficient vectors read from the top degree.
    The modulus is the smallest monic irreducible polynomial in that order.
    """

    def __init__(self, p, a=1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if a < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.a = p, a
        self.order = p**a
        if self.order > MAX_FIELD_ORDER:
            raise ValueError(f"field order {self.order} exceeds cap {MAX_FIELD_ORDER}")
        self.modulus = self._smallest_irreducible()
        self._exp, self._log = self._tables()

    @classmethod
    def of_order(cls, q):
        pa = is_prime_power(q)
        if pa is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pa)

    def __repr__(self):
        return f"FiniteField({self.p}**{self.a})"

    # polynomial helpers: coefficient lists, index = degree
    def _digits(self, x):
        out = []
        for _ in range(self.a):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _number(self, coeffs):
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + c
        return x

    def _polymulmod(self, f, g, mod):
        p = self.p
        prod = [0] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            if x:
                for j, y in enumerate(g):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._polymod(prod, mod)

    def _polymod(self, f, mod):
        p = self.p
        f = list(f)
        d = len(mod) - 1
        for i in range(len(f) - 1, d - 1, -1):
            c = f[i]
            if c:
                for j in range(d + 1):
                    f[i - d + j] = (f[i - d + j] - c * mod[j]) % p
        return (f[:d] + [0] * d)[:d]

    def _smallest_irreducible(self):
        p, a = self.p, self.a
        if a == 1:
            return [0, 1]
        for tail in range(p**a):
            mod = [(tail // p**i) % p for i in range(a)] + [1]
            if self._irreducible(mod):
                return mod
        raise AssertionError("no irreducible polynomial found")

    def _irreducible(self, mod):
        p, a = self.p, len(mod) - 1
        for d in range(1, a // 2 + 1):
            for tail in range(p**d):
                fac = [(tail // p**i) % p for i in range(d)] + [1]
                if not any(self._polyrem(mod, fac)):
                    return False
        return True

    def _polyrem(self, f, g):
        p = self.p
        f = list(f)
        d = len(g) - 1
        inv = pow(g[-1], -1, p)
        for i in range(len(f) - 1, d - 1, -1):
            c = f[i] * inv % p
            if c:
                for j in range(d + 1):
                    f[i - d + j] = (f[i - d + j] - c * g[j]) % p
        return f[:d]

    def _slow_mul(self, x, y):
        if self.a == 1:
            return x * y % self.p
        return self._number(self._polymulmod(self._digits(x), self._digits(y), self.modulus))

    def _slow_pow(self, x, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, x)
            x = self._slow_mul(x, x)
            e >>= 1
        return r

    def _tables(self):
        N = self.order - 1
        primes = _prime_factors(N) if N > 1 else []
        g = next(x for x in range(1, self.order)
                 if all(self._slow_pow(x, N // r) != 1 for r in primes))
        self.primitive = g
        exp = [1] * N
        for i in range(1, N):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = {x: i for i, x in enumerate(exp)}
        return exp, log

    @property
    def elements(self):
        return range(self.order)

    def add(self, x, y):
        if self.a == 1:
            return (x + y) % self.p
        return self._number([(u + v) % self.p for u, v in zip(self._digits(x), self._digits(y))])

    def neg(self, x):
        return self._number([-u % self.p for u in self._digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.order - 1)]

    def pow(self, x, e):
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % (self.order - 1)]

    def inverse(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[x] % (self.order - 1)]

    def mult_order(self, x):
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        N = self.order - 1
        return N // gcd(N, self._log[x])

    def exp(self, i):
        """g**i for the primitive element g."""
        return self._exp[i % (self.order - 1)]

    def trace(self, x, q):
        """Trace from this field down to its subfield of order q."""
        r = self.a
        sub = is_prime_power(q) if q >= 2 else None
        if sub is None or sub[0] != self.p or r % sub[1]:
            raise ValueError(f"GF({q}) is not a subfield of GF({self.order})")
        b = r // sub[1]
        total, y = 0, x
        for _ in range(b):
            total = self.add(total, y)
            y = self.pow(y, q)
        return total

    def in_subfield(self, x, q):
        return self.pow(x, q) == x


def primitive_element(F):
    return F.primitive


def trace_map(E, x, q):
    return E.trace(x, q)
