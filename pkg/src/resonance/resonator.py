"""Resonator coefficient schemes and their exact quadratic forms.

A resonator is a multiplicative coefficient system r(n) supported on
squarefree products of primes from one window.  Five schemes are
provided:

  theorem21        r(p) = L/(sqrt(p) log p), window default [L^2, exp((log L)^2)]
  signed-theorem21 same prime values times mu(n)
  frequencyA       r(p) = A/sqrt(p), window default [A^2, N^(1/(2A^2))]
  dirichlet-f      theorem21 prime values on an odd-prime window
  dirichlet-signed dirichlet-f times mu(n)

At desk scale the theorem21 default window is usually empty (it is an
asymptotic device), in which case construction fails loudly and the
caller must supply an explicit override window.
"""

import math
from dataclasses import dataclass

import numpy as np

from .arith import divisors, factorize, sieve_primes
from .errors import ResourceError, ValidationError, WindowError

SCHEMES = ("theorem21", "signed-theorem21", "frequencyA",
           "dirichlet-f", "dirichlet-signed")
SIGNED_SCHEMES = ("signed-theorem21", "dirichlet-signed")
ODD_SUPPORT_SCHEMES = ("dirichlet-f", "dirichlet-signed")
L_SCHEMES = ("theorem21", "signed-theorem21", "dirichlet-f", "dirichlet-signed")

SUPPORT_CAP = 1 << 22

EULER_FORMS = ("plain", "plus", "minus2", "fourth", "cusp")


def default_length_param(n_bound):
    """L = sqrt(log N loglog N); needs N > e^e for the inner log to be positive."""
    if n_bound < 16:
        raise ValidationError(
            "default L undefined for N < 16 (loglog N <= 0); pass L explicitly")
    return math.sqrt(math.log(n_bound) * math.log(math.log(n_bound)))


@dataclass(frozen=True)
class ResonatorSpec:
    scheme: str
    N: int
    L: float = None
    A: float = None
    prime_window: tuple = None  # (P0, P1) override; None selects the default

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValidationError("unknown scheme %r (choose from %s)"
                                  % (self.scheme, ", ".join(SCHEMES)))
        if not isinstance(self.N, int) or self.N < 2:
            raise ValidationError("N must be an integer >= 2, got %r" % (self.N,))
        if self.scheme == "frequencyA":
            if self.A is None or self.A <= 0:
                raise ValidationError("frequencyA scheme needs A > 0")
        else:
            if self.L is None:
                object.__setattr__(self, "L", default_length_param(self.N))
            elif self.L <= 0:
                raise ValidationError("L must be positive")
        if self.prime_window is not None:
            p0, p1 = self.prime_window
            if not p0 < p1:
                raise ValidationError("prime window needs P0 < P1, got %r"
                                      % (self.prime_window,))
            object.__setattr__(self, "prime_window", (float(p0), float(p1)))

    @property
    def signed(self):
        return self.scheme in SIGNED_SCHEMES

    @property
    def odd_support(self):
        return self.scheme in ODD_SUPPORT_SCHEMES

    def default_window(self):
        if self.scheme == "frequencyA":
            return (self.A ** 2, self.N ** (1.0 / (2.0 * self.A ** 2)))
        logl = math.log(self.L)
        return (self.L ** 2, math.exp(logl ** 2))

    def window(self):
        return self.prime_window if self.prime_window is not None \
            else self.default_window()

    def admissible(self):
        """frequencyA admissibility 10 A^2 log A <= log N; True for other schemes."""
        if self.scheme != "frequencyA":
            return True
        return 10.0 * self.A ** 2 * math.log(self.A) <= math.log(self.N)

    def prime_value(self, p):
        """r(p) for a window prime (sign handled at the table level)."""
        if self.scheme == "frequencyA":
            return self.A / math.sqrt(p)
        return self.L / (math.sqrt(p) * math.log(p))


@dataclass(frozen=True)
class CoefficientTable:
    """Sparse ascending map n -> r(n) over the squarefree window support."""

    spec: ResonatorSpec
    ns: np.ndarray        # int64, ascending, always starting with 1
    values: np.ndarray    # float64, aligned with ns
    prime_values: dict    # p -> r(p), window primes only

    def __len__(self):
        return len(self.ns)

    def __post_init__(self):
        object.__setattr__(self, "_index",
                           {int(n): i for i, n in enumerate(self.ns)})

    def value(self, n):
        i = self._index.get(n)
        return 0.0 if i is None else float(self.values[i])

    def __contains__(self, n):
        return n in self._index

    def window_primes(self):
        return sorted(self.prime_values)

    def abs_prime_value(self, p):
        """The unsigned multiplicative weight f(p) = |r(p)|."""
        return abs(self.prime_values[p])


def window_primes_for(spec):
    lo, hi = spec.window()
    if hi < 2:
        return []
    table = sieve_primes(max(2, int(math.floor(hi))))
    primes = [p for p in table.primes if lo <= p <= hi]
    if spec.odd_support and primes and primes[0] == 2:
        primes = primes[1:]
    return primes


def build_table(spec):
    """Enumerate the squarefree support of a scheme up to N.

    Deterministic: entries come out ascending by n.  An empty default
    window raises WindowError (carrying the window that came up empty);
    an explicit override window is honoured even when it is primeless.
    """
    primes = window_primes_for(spec)
    if not primes and spec.prime_window is None:
        raise WindowError(
            "default prime window [%.6g, %.6g] of scheme %s contains no prime "
            "at N=%d; pass an explicit override window"
            % (*spec.default_window(), spec.scheme, spec.N),
            spec.default_window())

    sign = -1.0 if spec.signed else 1.0
    pvals = {p: sign * spec.prime_value(p) for p in primes}

    entries = [(1, 1.0)]

    def extend(start, n, value):
        if len(entries) > SUPPORT_CAP:
            raise ResourceError("support exceeds %d entries" % SUPPORT_CAP)
        for i in range(start, len(primes)):
            p = primes[i]
            m = n * p
            if m > spec.N:
                break
            v = value * pvals[p]
            entries.append((m, v))
            extend(i + 1, m, v)

    extend(0, 1, 1.0)
    entries.sort()
    ns = np.array([n for n, _ in entries], dtype=np.int64)
    values = np.array([v for _, v in entries], dtype=np.float64)
    return CoefficientTable(spec, ns, values, pvals)


def denominator_exact(table):
    """sum of r(n)^2 over the support, compensated."""
    return math.fsum(float(v) * float(v) for v in table.values)


def numerator_exact(table):
    """sum over pairs mk <= N of r(m) r(mk) / sqrt(k).

    Iterates support entries n and their divisors m (zero coefficients
    off-support contribute nothing), so it is exact for any table, not
    just multiplicatively closed ones.
    """
    terms = []
    for i, n in enumerate(table.ns):
        n = int(n)
        rn = float(table.values[i])
        for m in divisors(n):
            j = table._index.get(m)
            if j is not None:
                terms.append(float(table.values[j]) * rn / math.sqrt(n // m))
    return math.fsum(terms)


def numerator_bruteforce(table):
    """Literal double loop over (m, k) with mk <= N; the oracle for small N."""
    total = []
    for m in range(1, table.spec.N + 1):
        rm = table.value(m)
        if rm == 0.0:
            continue
        for k in range(1, table.spec.N // m + 1):
            rmk = table.value(m * k)
            if rmk != 0.0:
                total.append(rm * rmk / math.sqrt(k))
    return math.fsum(total)


def _euler_factor(form, f, p):
    sq = math.sqrt(p)
    if form == "plain":
        return 1.0 + f * f
    if form == "plus":
        return 1.0 + f * f + f / sq
    if form == "minus2":
        return 1.0 + f * f - 2.0 * f / sq
    if form == "fourth":
        return 1.0 + 4.0 * f * f + f ** 4
    if form == "cusp":
        return 1.0 + f * f * (1.0 + 1.0 / p) + 2.0 * f / sq
    raise ValidationError("unknown Euler form %r (choose from %s)"
                          % (form, ", ".join(EULER_FORMS)))


def euler_product(table, form):
    """Product over window primes of the requested factor, in log domain.

    Factors use the unsigned weight f(p) = |r(p)|; sign conventions are
    the caller's business (the minus2/cusp forms carry them explicitly).
    """
    logs = []
    for p in table.window_primes():
        factor = _euler_factor(form, table.abs_prime_value(p), p)
        if factor <= 0.0:
            raise ValidationError(
                "euler factor for form %s is %g <= 0 at prime %d" % (form, factor, p))
        logs.append(math.log(factor))
    return math.exp(math.fsum(logs))


def rankin_tail_ratio(table, alpha):
    """Error-to-main-term ratio of the Rankin tail estimate at exponent alpha.

    N^(-alpha) * prod(1 + p^alpha f^2 + f p^(alpha-1/2)) / prod(1 + f^2 + f/sqrt(p)).
    Degenerates to 1 at alpha = 0; may exceed 1 for large alpha (it only reports).
    """
    if alpha < 0:
        raise ValidationError("alpha must be >= 0")
    logs = []
    for p in table.window_primes():
        f = table.abs_prime_value(p)
        num = 1.0 + p ** alpha * f * f + f * p ** (alpha - 0.5)
        den = 1.0 + f * f + f / math.sqrt(p)
        logs.append(math.log(num) - math.log(den))
    return math.exp(math.fsum(logs) - alpha * math.log(table.spec.N))


AMGM_SIEVE_CAP = 4_000_000


def _dual_g_values(n_bound, length_param):
    """g(k) for k <= n_bound where g(p^a) = min(1, L / (p^(a/2) log p))."""
    if n_bound > AMGM_SIEVE_CAP:
        raise ResourceError(
            "g-sieve for N=%d exceeds the budget; cap is %d"
            % (n_bound, AMGM_SIEVE_CAP))
    spf = np.zeros(n_bound + 1, dtype=np.int64)
    for p in range(2, n_bound + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    g = np.ones(n_bound + 1, dtype=np.float64)
    for k in range(2, n_bound + 1):
        p = int(spf[k])
        m = k
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        g[k] = g[m] * min(1.0, length_param / (p ** (a / 2.0) * math.log(p)))
    return g


def amgm_upper_certificate(table):
    """Numerically check the AM-GM upper bound for the numerator form.

    Builds the dual function g from the table's L and evaluates
    B = 1/2 sum_n r(n)^2 ( sum_{k<=N/n} g(k)/sqrt(k) + sum_{k|n} 1/(sqrt(k) g(k)) ).
    Returns (B, numerator <= B).  The inequality is sign-independent, so
    it must hold for signed tables too.
    """
    spec = table.spec
    if spec.L is not None:
        length_param = spec.L
    elif spec.N >= 16:
        length_param = default_length_param(spec.N)
    else:
        length_param = 1.0  # any positive g gives a valid certificate
    g = _dual_g_values(spec.N, length_param)
    k = np.arange(spec.N + 1, dtype=np.float64)
    k[0] = 1.0
    weighted = g / np.sqrt(k)
    weighted[0] = 0.0
    prefix = np.cumsum(weighted)

    terms = []
    for i, n in enumerate(table.ns):
        n = int(n)
        rn2 = float(table.values[i]) ** 2
        dual = math.fsum(1.0 / (math.sqrt(d) * g[d]) for d in divisors(n))
        terms.append(rn2 * (float(prefix[spec.N // n]) + dual))
    bound = 0.5 * math.fsum(terms)
    num = numerator_exact(table)
    holds = num <= bound + 1e-9 * max(1.0, abs(bound))
    return bound, holds


# -- line-oriented export / import -------------------------------------------

_HEADER = "resonance-table v1"


def _fmt(x):
    return "none" if x is None else repr(float(x))


def write_table(table, path):
    """Text export: one header line with the spec, then 'n r(n)' pairs.

    Floats are printed with repr (shortest round-tripping form), so a
    read-back reproduces the table bit for bit.
    """
    spec = table.spec
    p0, p1 = (spec.prime_window if spec.prime_window is not None
              else (None, None))
    with open(path, "w") as fh:
        fh.write("%s scheme=%s N=%d L=%s A=%s P0=%s P1=%s\n"
                 % (_HEADER, spec.scheme, spec.N, _fmt(spec.L), _fmt(spec.A),
                    _fmt(p0), _fmt(p1)))
        for n, v in zip(table.ns, table.values):
            fh.write("%d %s\n" % (n, repr(float(v))))


def read_table(path):
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith(_HEADER):
            raise ValidationError("not a resonance table file: %r" % (header,))
        fields = dict(kv.split("=", 1) for kv in header.split()[2:])

        def opt(key):
            return None if fields[key] == "none" else float(fields[key])

        window = None
        if opt("P0") is not None:
            window = (opt("P0"), opt("P1"))
        spec = ResonatorSpec(scheme=fields["scheme"], N=int(fields["N"]),
                             L=opt("L"), A=opt("A"), prime_window=window)
        ns, values = [], []
        for line in fh:
            if not line.strip():
                continue
            n_str, v_str = line.split()
            n = int(n_str)
            if ns and n <= ns[-1]:
                raise ValidationError("table entries out of order at n=%d" % n)
            if any(e >= 2 for _, e in factorize(n).factors):
                raise ValidationError("table key %d is not squarefree" % n)
            ns.append(n)
            values.append(float(v_str))
    ns = np.array(ns, dtype=np.int64)
    values = np.array(values, dtype=np.float64)
    pvals = {int(n): float(v) for n, v in zip(ns, values)
             if len(factorize(int(n)).factors) == 1 and
             factorize(int(n)).factors[0][1] == 1}
    return CoefficientTable(spec, ns, values, pvals)


def vector_on_range(table):
    """Dense r[1..N] as a float array indexed by n (index 0 unused)."""
    dense = np.zeros(table.spec.N + 1, dtype=np.float64)
    dense[table.ns] = table.values
    return dense
