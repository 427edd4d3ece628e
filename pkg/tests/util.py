"""Seeded builders for random series and group elements shared by the suite."""

from riordan import NottSeries, RiordanElem, TruncSeries, UnitSeries


def rand_coeff(rng, ring):
    if ring.p is None:
        return rng.randrange(-9, 10)
    return rng.randrange(ring.p)


def nonzero_coeff(rng, ring):
    if ring.p is None:
        v = rng.randrange(1, 10)
        return -v if rng.random() < 0.5 else v
    return rng.randrange(1, ring.p)


def rand_series(rng, ring, trunc):
    return TruncSeries(ring, tuple(rand_coeff(rng, ring) for _ in range(trunc + 1)))


def rand_unit(rng, ring, trunc, n=1, exact=False):
    """Random element of H^n; exact forces the degree-n coefficient nonzero."""
    c = [0] * (trunc + 1)
    c[0] = 1
    for k in range(n, trunc + 1):
        c[k] = rand_coeff(rng, ring)
    if exact and n <= trunc:
        c[n] = nonzero_coeff(rng, ring)
    return UnitSeries(ring, tuple(c))


def rand_nott(rng, ring, trunc, n=1, exact=False):
    """Random element of N^n; exact forces the degree-(n+1) coefficient nonzero."""
    c = [0] * (trunc + 1)
    c[1] = 1
    for k in range(n + 1, trunc + 1):
        c[k] = rand_coeff(rng, ring)
    if exact and n + 1 <= trunc:
        c[n + 1] = nonzero_coeff(rng, ring)
    return NottSeries(ring, tuple(c))


def rand_elem(rng, ring, trunc, m=1, n=1):
    return RiordanElem(rand_unit(rng, ring, trunc, m), rand_nott(rng, ring, trunc, n))
