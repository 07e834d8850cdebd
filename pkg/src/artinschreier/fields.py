"""Arithmetic in the tower F_p < F_q < F_{q^n} with q = p^s, p an odd prime.

Element encodings:

* An element of F_q ("base element") is an int in [0, q): the base-p digits
  are the coefficients of the polynomial basis over F_p, constant term in the
  least significant digit.  For s = 1 this is the usual residue in [0, p).
* An element of F_{q^n} ("ext element") is a tuple of n base-element ints,
  index k holding the coefficient of t^k in the polynomial basis over F_q.

Both moduli are the lexicographically least monic irreducibles of their
degree, coefficients compared from the constant term upward, so identical
parameters always produce identical towers.  Enumeration of F_{q^n} runs in
odometer order on the coefficient tuples, least significant coefficient
fastest; element m of the enumeration has base-q digits of m as coefficients.
"""

from __future__ import annotations

import functools
import itertools
import random
from typing import Iterator, Sequence

# A fourth root of unity i^e is represented by its exponent e in {0,1,2,3}.
FourthRootUnit = int

BaseElement = int
ExtElement = tuple

_LOG_TABLE_MAX_Q = 1 << 20
_ADD_TABLE_MAX_Q = 1 << 9  # q*q add/sub lookup tables below this


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def _prime_factors(m: int) -> list:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def tau_power(p: int, e: int) -> FourthRootUnit:
    """Exponent of i in tau^e, where tau = 1 if p = 1 (mod 4) and i otherwise."""
    if p % 4 == 1:
        return 0
    return e % 4


class _PolyOps:
    """Dense polynomial arithmetic over a coefficient field given by callbacks.

    Polynomials are lists of coefficients, index = degree.  Used only for
    modulus search and table construction; hot paths use the tables below.
    """

    def __init__(self, zero, one, add, sub, mul, inv):
        self.zero, self.one = zero, one
        self.add, self.sub, self.mul, self.inv = add, sub, mul, inv

    def trim(self, f: list) -> list:
        while f and f[-1] == self.zero:
            f.pop()
        return f

    def mul_mod(self, f: list, g: list, mod: list) -> list:
        res = [self.zero] * (len(f) + len(g) - 1) if f and g else []
        for a, fa in enumerate(f):
            if fa == self.zero:
                continue
            for b, gb in enumerate(g):
                res[a + b] = self.add(res[a + b], self.mul(fa, gb))
        return self.rem(res, mod)

    def rem(self, f: list, mod: list) -> list:
        f = list(f)
        lead_inv = self.inv(mod[-1])
        while len(f) >= len(mod):
            c = f[-1]
            if c != self.zero:
                factor = self.mul(c, lead_inv)
                shift = len(f) - len(mod)
                for k in range(len(mod)):
                    f[shift + k] = self.sub(f[shift + k], self.mul(factor, mod[k]))
            f.pop()
        return self.trim(f)

    def pow_poly(self, h: list, e: int, mod: list) -> list:
        result = [self.one]
        base = self.rem(list(h), mod)
        while e:
            if e & 1:
                result = self.mul_mod(result, base, mod)
            base = self.mul_mod(base, base, mod)
            e >>= 1
        return result

    def gcd(self, f: list, g: list) -> list:
        f, g = self.trim(list(f)), self.trim(list(g))
        while g:
            lead_inv = self.inv(g[-1])
            while len(f) >= len(g):
                c = f[-1]
                if c != self.zero:
                    factor = self.mul(c, lead_inv)
                    shift = len(f) - len(g)
                    for k in range(len(g)):
                        f[shift + k] = self.sub(f[shift + k], self.mul(factor, g[k]))
                f.pop()
                self.trim(f)
            f, g = g, self.trim(f)
        return f

    def is_irreducible(self, f: list, card: int) -> bool:
        """Monic f of degree d >= 2 is reducible iff it has an irreducible
        factor of some degree k <= d/2, and such a factor divides
        gcd(x^(card^k) - x, f).  Walking h -> h^card visits x^(card^k) for
        k = 1, 2, ... and exits at the smallest factor degree, which is what
        makes the lexicographic modulus scan affordable."""
        d = len(f) - 1
        if d == 1:
            return True
        x = self.rem([self.zero, self.one], f)
        h = x
        for _ in range(d // 2):
            h = self.pow_poly(h, card, f)
            diff = [self.zero] * max(len(h), len(x))
            for k, c in enumerate(h):
                diff[k] = c
            for k, c in enumerate(x):
                diff[k] = self.sub(diff[k], c)
            g = self.gcd(self.trim(diff), list(f))
            if len(g) != 1:
                return False
        return True

    def least_irreducible(self, degree: int, card: int, elements) -> list:
        """First monic irreducible of the given degree in lexicographic order
        on (c_0, ..., c_{degree-1}), constant term most significant."""
        elements = list(elements)
        for c0 in elements:
            # for degree >= 2 a zero constant term means x divides f; skipping
            # the whole block keeps the scan linear in the useful candidates
            if degree > 1 and c0 == self.zero:
                continue
            for rest in itertools.product(elements, repeat=degree - 1):
                cand = [c0] + list(rest) + [self.one]
                if self.is_irreducible(cand, card):
                    return cand
        raise RuntimeError("no irreducible polynomial found")


class FieldTower:
    """The chain F_p < F_q = F_{p^s} < F_{q^n}; all arithmetic lives here.

    Construct via build_tower().  Instances are immutable after construction
    and safe for concurrent reads.
    """

    def __init__(self, p: int, s: int, n: int):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError("even characteristic unsupported")
        if s < 1 or n < 1:
            raise ValueError("s and n must be positive")
        self.p, self.s, self.n = p, s, n
        self.q = p ** s
        self.ext_card = self.q ** n

        fp = _PolyOps(0, 1, lambda a, b: (a + b) % p, lambda a, b: (a - b) % p,
                      lambda a, b: (a * b) % p, lambda a: pow(a, p - 2, p))
        self.base_modulus = tuple(fp.least_irreducible(s, p, range(p)))
        self._init_base_tables()

        fq = _PolyOps(0, 1, self.badd, self.bsub, self.bmul, self.binv)
        self.ext_modulus = tuple(fq.least_irreducible(n, self.q, range(self.q)))
        self._fq_poly = fq
        self._init_ext_tables()

    # ----- F_q arithmetic on int codes -----

    def _init_base_tables(self) -> None:
        p, s, q = self.p, self.s, self.q
        if s == 1:
            self._exp = self._log = None
            self._add = self._sub = None
            return
        if q <= _ADD_TABLE_MAX_Q:
            digits = [self.base_digits(a) for a in range(q)]
            add = [0] * (q * q)
            sub = [0] * (q * q)
            for a in range(q):
                da = digits[a]
                for b in range(q):
                    db = digits[b]
                    add[a * q + b] = self.base_from_digits(
                        [(x + y) % p for x, y in zip(da, db)])
                    sub[a * q + b] = self.base_from_digits(
                        [(x - y) % p for x, y in zip(da, db)])
            self._add, self._sub = add, sub
        else:
            self._add = self._sub = None
        if q > _LOG_TABLE_MAX_Q:
            self._exp = self._log = None
            return
        # discrete-log tables over a primitive element
        factors = _prime_factors(q - 1)
        g = None
        for cand in range(2, q):
            if all(self._bpow_generic(cand, (q - 1) // ell) != 1 for ell in factors):
                g = cand
                break
        assert g is not None
        exp = [1] * (q - 1)
        for k in range(1, q - 1):
            exp[k] = self._bmul_generic(exp[k - 1], g)
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp, self._log = exp, log

    def _bmul_generic(self, a: int, b: int) -> int:
        """Polynomial multiplication of digit vectors mod base_modulus."""
        p, s = self.p, self.s
        da = self.base_digits(a)
        db = self.base_digits(b)
        res = [0] * (2 * s - 1)
        for k, ak in enumerate(da):
            if ak:
                for m, bm in enumerate(db):
                    res[k + m] = (res[k + m] + ak * bm) % p
        mod = self.base_modulus
        for top in range(2 * s - 2, s - 1, -1):
            c = res[top]
            if c:
                res[top] = 0
                for m in range(s):
                    res[top - s + m] = (res[top - s + m] - c * mod[m]) % p
        return self.base_from_digits(res[:s])

    def _bpow_generic(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._bmul_generic(r, a)
            a = self._bmul_generic(a, a)
            e >>= 1
        return r

    def base_digits(self, a: int) -> list:
        p = self.p
        out = []
        for _ in range(self.s):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def base_from_digits(self, digits: Sequence) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def badd(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a * self.q + b]
        return self.base_from_digits(
            [(x + y) % self.p for x, y in zip(self.base_digits(a), self.base_digits(b))])

    def bsub(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a - b) % self.p
        if self._sub is not None:
            return self._sub[a * self.q + b]
        return self.base_from_digits(
            [(x - y) % self.p for x, y in zip(self.base_digits(a), self.base_digits(b))])

    def bneg(self, a: int) -> int:
        return self.bsub(0, a)

    def bmul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._bmul_generic(a, b)

    def binv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._bpow_generic(a, self.q - 2)

    def bpow(self, a: int, e: int) -> int:
        if e < 0:
            return self.bpow(self.binv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.bmul(r, a)
            a = self.bmul(a, a)
            e >>= 1
        return r

    def base_from_int(self, m: int) -> int:
        """The integer m as an element of F_q (m times the identity)."""
        return m % self.p

    def quadratic_character(self, a: int) -> int:
        """chi(a): 1 for nonzero squares, -1 for non-squares, 0 for a = 0."""
        if a == 0:
            return 0
        if self._log is not None:
            return -1 if self._log[a] & 1 else 1
        r = self.bpow(a, (self.q - 1) // 2)
        return 1 if r == 1 else -1

    def base_trace_to_prime(self, a: int) -> int:
        """Absolute trace Tr_{F_q/F_p}(a) as an int in [0, p)."""
        digits = self.base_digits(a)
        return sum(d * t for d, t in zip(digits, self._btr_mono)) % self.p

    # ----- F_{q^n} arithmetic on coefficient tuples -----

    def _init_ext_tables(self) -> None:
        n, q = self.n, self.q
        self.zero = tuple([0] * n)
        self.one = tuple([1] + [0] * (n - 1))

        # image of each basis monomial t^k under x -> x^q, as a coordinate row
        frob1 = []
        for k in range(n):
            mono = tuple(1 if j == k else 0 for j in range(n))
            frob1.append(self.xpow(mono, q))
        self._frob_matrices = {0: [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)],
                               1: frob1}

        # trace of each monomial; each must land in the embedded F_q
        self._tr_mono = []
        for k in range(n):
            acc = self.zero
            z = tuple(1 if j == k else 0 for j in range(n))
            for _ in range(n):
                acc = self.xadd(acc, z)
                z = self._apply_frob_matrix(z, 1)
            assert all(c == 0 for c in acc[1:]), "trace left the base field"
            self._tr_mono.append(acc[0])

        # absolute trace of F_q basis monomials u^j down to F_p
        btr = []
        for j in range(self.s):
            a = self.p ** j if self.s > 1 else 1
            acc = 0
            z = a
            for _ in range(self.s):
                acc = self.badd(acc, z)
                z = self.bpow(z, self.p)
            digits = self.base_digits(acc)
            assert all(d == 0 for d in digits[1:]), "absolute trace left F_p"
            btr.append(digits[0])
        self._btr_mono = btr

    def _frob_matrix(self, k: int):
        k %= self.n
        if k not in self._frob_matrices:
            prev = self._frob_matrix(k - 1)
            self._frob_matrices[k] = [self._apply_frob_matrix(row, 1) for row in prev]
        return self._frob_matrices[k]

    def _apply_frob_matrix(self, x: ExtElement, k: int) -> ExtElement:
        mat = self._frob_matrices[k] if k in self._frob_matrices else self._frob_matrix(k)
        out = [0] * self.n
        for c, row in zip(x, mat):
            if c:
                for j, m in enumerate(row):
                    if m:
                        out[j] = self.badd(out[j], self.bmul(c, m))
        return tuple(out)

    def xadd(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return tuple(self.badd(a, b) for a, b in zip(x, y))

    def xsub(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return tuple(self.bsub(a, b) for a, b in zip(x, y))

    def xneg(self, x: ExtElement) -> ExtElement:
        return tuple(self.bneg(a) for a in x)

    def xmul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        n = self.n
        if n == 1:
            return (self.bmul(x[0], y[0]),)
        res = [0] * (2 * n - 1)
        for k, xk in enumerate(x):
            if xk:
                for m, ym in enumerate(y):
                    if ym:
                        res[k + m] = self.badd(res[k + m], self.bmul(xk, ym))
        mod = self.ext_modulus
        for top in range(2 * n - 2, n - 1, -1):
            c = res[top]
            if c:
                res[top] = 0
                for m in range(n):
                    res[top - n + m] = self.bsub(res[top - n + m], self.bmul(c, mod[m]))
        return tuple(res[:n])

    def xscale(self, a: int, x: ExtElement) -> ExtElement:
        return tuple(self.bmul(a, c) for c in x)

    def xpow(self, x: ExtElement, e: int) -> ExtElement:
        if e < 0:
            return self.xpow(self.xinv(x), -e)
        r = self.one
        while e:
            if e & 1:
                r = self.xmul(r, x)
            x = self.xmul(x, x)
            e >>= 1
        return r

    def xinv(self, x: ExtElement) -> ExtElement:
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero in F_{q^n}")
        return self.xpow(x, self.ext_card - 2)

    def embed(self, a: int) -> ExtElement:
        """F_q into F_{q^n} as a constant polynomial."""
        return tuple([a] + [0] * (self.n - 1))

    def frobenius(self, x: ExtElement, k: int = 1) -> ExtElement:
        """x^(q^k); k is reduced mod n."""
        return self._apply_frob_matrix(x, k % self.n)

    def trace(self, x: ExtElement) -> int:
        """Tr(x) = x + x^q + ... + x^(q^(n-1)), as a base element."""
        acc = 0
        for c, t in zip(x, self._tr_mono):
            if c and t:
                acc = self.badd(acc, self.bmul(c, t))
        return acc

    def abs_trace(self, x: ExtElement) -> int:
        """Composition Tr_{F_q/F_p} . Tr, an int in [0, p)."""
        return self.base_trace_to_prime(self.trace(x))

    # ----- enumeration -----

    def ext_from_int(self, m: int) -> ExtElement:
        out = []
        for _ in range(self.n):
            m, c = divmod(m, self.q)
            out.append(c)
        return tuple(out)

    def ext_to_int(self, x: ExtElement) -> int:
        m = 0
        for c in reversed(x):
            m = m * self.q + c
        return m

    def elements(self) -> Iterator:
        """All of F_{q^n} in odometer order, least significant coefficient fastest."""
        for m in range(self.ext_card):
            yield self.ext_from_int(m)

    def random_element(self, rng: random.Random) -> ExtElement:
        return self.ext_from_int(rng.randrange(self.ext_card))

    def random_base_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.q)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, s={self.s}, n={self.n})"


@functools.lru_cache(maxsize=None)
def build_tower(p: int, s: int, n: int) -> FieldTower:
    """Construct the tower F_p < F_{p^s} < F_{(p^s)^n} with deterministic moduli.

    Towers are immutable, so identical parameters share one cached instance.
    """
    return FieldTower(p, s, n)
