"""Exact truncated formal power series over a prime field or over the integers.

A series stores its coefficients c0..cN for a truncation degree N fixed at
construction.  All arithmetic is exact: coefficients over F_p are kept
canonically reduced to {0, ..., p-1}, integer coefficients are unbounded.
Operations never mix rings or truncations; move down explicitly with
``project``.

Values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

from operator import index as _as_int


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class CoeffRing:
    """The coefficient ring: F_p for a prime p, or the integers (p is None)."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            p = _as_int(p)
            if not _is_prime(p):
                raise ValueError(f"modulus must be prime, got {p}")
        self.p = p

    @classmethod
    def integers(cls):
        return cls(None)

    @classmethod
    def prime_field(cls, p):
        return cls(p)

    @property
    def is_field(self):
        return self.p is not None

    def reduce(self, c):
        c = _as_int(c)
        if self.p is None:
            return c
        return c % self.p

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and self.p == other.p

    def __hash__(self):
        return hash(("CoeffRing", self.p))

    def __repr__(self):
        return f"CoeffRing({self.p!r})"

    def __str__(self):
        return "Z" if self.p is None else f"Fp:{self.p}"


ZZ = CoeffRing(None)


def _require_match(a, b):
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.trunc != b.trunc:
        raise ValueError(f"truncation mismatch: {a.trunc} vs {b.trunc}")


# Coefficient kernels.  These work on plain tuples/lists so the quotient-group
# code can reuse them without building series objects; mod is a prime or None.

def _mul_coeffs(a, b, mod):
    n = len(a)
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    if mod is None:
        return tuple(out)
    return tuple(c % mod for c in out)


def _inv_unit_coeffs(a, mod):
    # a[0] must be 1; solve sum_{i} a_i c_{k-i} = [k == 0] for c.
    n = len(a)
    out = [0] * n
    out[0] = 1
    for k in range(1, n):
        s = 0
        for i in range(1, k + 1):
            ai = a[i]
            if ai:
                s += ai * out[k - i]
        out[k] = -s % mod if mod is not None else -s
    return tuple(out)


def _compose_coeffs(f, g, mod):
    # Horner evaluation of f(g); requires g[0] == 0 so truncation commutes
    # with substitution.
    if g[0]:
        raise ValueError("substituted series must have zero constant term")
    n = len(f)
    out = [0] * n
    for k in range(n - 1, -1, -1):
        new = [0] * n
        for i in range(n):
            ci = out[i]
            if ci:
                for j in range(1, n - i):
                    gj = g[j]
                    if gj:
                        new[i + j] += ci * gj
        new[0] += f[k]
        if mod is None:
            out = new
        else:
            out = [c % mod for c in new]
    return tuple(out)


def _comp_inverse_coeffs(g, mod):
    # g = (0, 1, b2, ...).  Solve g(r) = x degree by degree: the degree-m
    # coefficient of g(r) involves r_m only through the linear leading term,
    # so r_m = -[x^m](sum_{j>=2} b_j r^j) with r_m temporarily 0.
    n = len(g)
    r = [0, 1]
    for m in range(2, n):
        r.append(0)
        tail = (0, 0) + tuple(g[2 : m + 1])
        s = _compose_coeffs(tail, tuple(r), mod)
        r[m] = -s[m] % mod if mod is not None else -s[m]
    return tuple(r)


class TruncSeries:
    """A formal power series truncated at a fixed degree.

    coeffs has length trunc+1; arithmetic between two series requires an
    identical ring and an identical truncation.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        if not isinstance(ring, CoeffRing):
            raise TypeError("ring must be a CoeffRing")
        cs = tuple(ring.reduce(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant coefficient")
        self.ring = ring
        self.coeffs = cs
        self._check()

    def _check(self):
        pass

    @property
    def trunc(self):
        return len(self.coeffs) - 1

    def coeff(self, m):
        """The coefficient of x^m; m beyond the truncation is an error."""
        m = _as_int(m)
        if m < 0 or m > self.trunc:
            raise IndexError(f"coefficient index {m} outside stored range 0..{self.trunc}")
        return self.coeffs[m]

    def project(self, M):
        """The same series truncated down to degree M <= trunc."""
        M = _as_int(M)
        if M < 0 or M > self.trunc:
            raise ValueError(f"cannot project truncation {self.trunc} to {M}")
        return type(self)(self.ring, self.coeffs[: M + 1])

    def as_unit(self):
        return UnitSeries(self.ring, self.coeffs)

    def as_nott(self):
        return NottSeries(self.ring, self.coeffs)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        _require_match(self, other)
        mod = self.ring.p
        cs = [a + b for a, b in zip(self.coeffs, other.coeffs)]
        if mod is not None:
            cs = [c % mod for c in cs]
        return TruncSeries(self.ring, cs)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        _require_match(self, other)
        mod = self.ring.p
        cs = [a - b for a, b in zip(self.coeffs, other.coeffs)]
        if mod is not None:
            cs = [c % mod for c in cs]
        return TruncSeries(self.ring, cs)

    def __neg__(self):
        mod = self.ring.p
        cs = [-c for c in self.coeffs]
        if mod is not None:
            cs = [c % mod for c in cs]
        return TruncSeries(self.ring, cs)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        _require_match(self, other)
        cs = _mul_coeffs(self.coeffs, other.coeffs, self.ring.p)
        if isinstance(self, UnitSeries) and isinstance(other, UnitSeries):
            return UnitSeries(self.ring, cs)
        return TruncSeries(self.ring, cs)

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({self.ring}, {poly_str(self)!r}, N={self.trunc})"


class UnitSeries(TruncSeries):
    """A series with constant term 1: an element of the group H under mul."""

    __slots__ = ()

    def _check(self):
        if self.coeffs[0] != 1:
            raise ValueError("unit series must have constant term 1")

    @classmethod
    def one(cls, ring, trunc):
        return cls(ring, (1,) + (0,) * trunc)

    def in_level(self, n):
        """Whether the series lies in H^n, i.e. c1..c_{n-1} all vanish."""
        n = _as_int(n)
        if n < 1:
            raise ValueError("level must be >= 1")
        if n - 1 > self.trunc:
            raise ValueError(f"truncation {self.trunc} cannot decide H^{n} membership")
        return not any(self.coeffs[1:n])

    def level(self):
        """The largest n with the series in H^n; None when it equals 1."""
        for i in range(1, self.trunc + 1):
            if self.coeffs[i]:
                return i
        return None


class NottSeries(TruncSeries):
    """A series x + c2 x^2 + ...: an element of the Nottingham group."""

    __slots__ = ()

    def _check(self):
        if self.trunc < 1:
            raise ValueError("a substitution series needs degree >= 1")
        if self.coeffs[0] != 0 or self.coeffs[1] != 1:
            raise ValueError("substitution series must start with x")

    @classmethod
    def identity(cls, ring, trunc):
        return cls(ring, (0, 1) + (0,) * (trunc - 1))

    def in_level(self, n):
        """Whether the series lies in N^n, i.e. c2..c_n all vanish."""
        n = _as_int(n)
        if n < 1:
            raise ValueError("level must be >= 1")
        if n > self.trunc:
            raise ValueError(f"truncation {self.trunc} cannot decide N^{n} membership")
        return not any(self.coeffs[2 : n + 1])

    def level(self):
        """The largest n with the series in N^n; None when it equals x."""
        for i in range(2, self.trunc + 1):
            if self.coeffs[i]:
                return i - 1
        return None


def mul(a, b):
    """The truncated Cauchy product."""
    if not isinstance(a, TruncSeries) or not isinstance(b, TruncSeries):
        raise TypeError("mul expects two series")
    return a * b


def inv_unit(h):
    """The multiplicative inverse of a unit series.

    Solved by the convolution recurrence c_k = -sum_{i>=1} a_i c_{k-i};
    if h is in H^n the result is in H^n with degree-n coefficient -a_n.
    """
    if not isinstance(h, UnitSeries):
        h = TruncSeries.as_unit(h)
    return UnitSeries(h.ring, _inv_unit_coeffs(h.coeffs, h.ring.p))


def compose(f, g):
    """Substitution f(g) for g with zero constant term.

    Truncation commutes with substitution because [x^k] f(g) depends only on
    coefficients of f and g up to degree k.
    """
    if not isinstance(f, TruncSeries) or not isinstance(g, TruncSeries):
        raise TypeError("compose expects two series")
    _require_match(f, g)
    return TruncSeries(f.ring, _compose_coeffs(f.coeffs, g.coeffs, f.ring.p))


def comp_inverse(g):
    """The compositional inverse of x + c2 x^2 + ... (two-sided)."""
    if not isinstance(g, NottSeries):
        g = TruncSeries.as_nott(g)
    return NottSeries(g.ring, _comp_inverse_coeffs(g.coeffs, g.ring.p))


def twist(h, g):
    """h(g) * h^(-1) for a unit h and a substitution series g.

    For h in H^n and g in N^(m-1) the result lies in H^(m+n-1) and its
    degree-(m+n-1) coefficient is n * a_n * b_m, so it lands in H^(m+n)
    exactly when that product vanishes in the coefficient ring.
    """
    if not isinstance(h, UnitSeries):
        raise TypeError("twist expects a unit series")
    if not isinstance(g, NottSeries):
        raise TypeError("twist expects a substitution series")
    _require_match(h, g)
    return compose(h, g).as_unit() * inv_unit(h)


# Text form: `ring=(Fp:<p>|Z); trunc=<N>; coeffs=<c0>,...,<cN>`, one series
# per line, decimal coefficients, negatives only over Z.

def parse_series(line):
    parts = [p.strip() for p in line.strip().split(";")]
    fields = {}
    for part in parts:
        if not part:
            continue
        key, eq, value = part.partition("=")
        if not eq:
            raise ValueError(f"malformed series field {part!r}")
        key = key.strip()
        if key in fields:
            raise ValueError(f"duplicate series field {key!r}")
        fields[key] = value.strip()
    missing = {"ring", "trunc", "coeffs"} - set(fields)
    if missing:
        raise ValueError(f"series literal missing fields: {', '.join(sorted(missing))}")
    extra = set(fields) - {"ring", "trunc", "coeffs"}
    if extra:
        raise ValueError(f"series literal has unknown fields: {', '.join(sorted(extra))}")

    ringtext = fields["ring"]
    if ringtext == "Z":
        ring = CoeffRing(None)
    elif ringtext.startswith("Fp:"):
        ptext = ringtext[3:]
        if not ptext.isdigit():
            raise ValueError(f"malformed ring {ringtext!r}")
        ring = CoeffRing(int(ptext))
    else:
        raise ValueError(f"malformed ring {ringtext!r}")

    if not fields["trunc"].isdigit():
        raise ValueError(f"malformed truncation {fields['trunc']!r}")
    trunc = int(fields["trunc"])

    coeffs = []
    for tok in fields["coeffs"].split(","):
        tok = tok.strip()
        body = tok[1:] if tok.startswith("-") else tok
        if not body.isdigit():
            raise ValueError(f"malformed coefficient {tok!r}")
        if tok.startswith("-") and ring.p is not None:
            raise ValueError("negative coefficients are only allowed over Z")
        coeffs.append(int(tok))
    if len(coeffs) != trunc + 1:
        raise ValueError(f"expected {trunc + 1} coefficients, got {len(coeffs)}")
    return TruncSeries(ring, coeffs)


def format_series(s):
    coeffs = ",".join(str(c) for c in s.coeffs)
    return f"ring={s.ring}; trunc={s.trunc}; coeffs={coeffs}"


def poly_str(s):
    """Human-readable polynomial rendering, lowest degree first."""
    terms = []
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        x = "x" if i == 1 else f"x^{i}"
        if c == 1:
            terms.append(x)
        elif c == -1:
            terms.append(f"-{x}")
        else:
            terms.append(f"{c}*{x}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
