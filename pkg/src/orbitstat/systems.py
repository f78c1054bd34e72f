"""Fixed-point sequence sources and their spectral data.

A source produces the sequence sigma_k = number of fixed points of the
k-th iterate. Three variants:

  * fad     - product form c^k |det(A^k - 1)| r_k prod_p |k|_p^{s_{p,k}}
              p^{-t_{p,k} |k|_p^{-1}} with periodic gcd-sequence data,
  * builtin - the worked examples FF(q), E(p,n), GA, GM, periodic(values),
  * table   - an explicit prefix sigma_1..sigma_X.

Also here: growth rate Lambda, unit-circle eigenvalue angles of the matrix
part (which control the oscillatory factor in Cesaro means), and the Dold
integrality check that any realizable sigma must satisfy.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath as mp

from orbitstat.numtheory import (
    PeriodicSequence,
    divisors,
    is_gcd_sequence,
    is_prime,
    lte_params,
    mobius,
    nk_minus_one_valuation,
    p_valuation,
)
from orbitstat import polyops


@dataclass(frozen=True)
class FadPrime:
    """Local data at one prime: exponent sequences s and t (integers >= 0)."""

    p: int
    s: PeriodicSequence
    t: PeriodicSequence


@dataclass(frozen=True)
class FadSpec:
    """Parameters (c, A, r, {(p, s_p, t_p)}) of a product-form sigma.

    The matrix factor |det(A^k - 1)| is present iff matrix is not None.
    """

    c: int = 1
    matrix: tuple = None
    r: PeriodicSequence = field(default_factory=lambda: PeriodicSequence.constant(1))
    primes: tuple = ()

    def __post_init__(self):
        if self.matrix is not None:
            object.__setattr__(
                self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix)
            )
        object.__setattr__(self, "primes", tuple(self.primes))

    def validate(self, require_positive=True):
        """Check realizability constraints; raises ValueError on violation."""
        if not isinstance(self.c, int) or self.c < 1:
            raise ValueError("c must be a positive integer")
        if self.matrix is not None:
            d = len(self.matrix)
            if any(len(row) != d for row in self.matrix):
                raise ValueError("matrix must be square")
            if require_positive:
                cp = polyops.charpoly([list(row) for row in self.matrix])
                if polyops.cyclotomic_divisors(cp):
                    raise ValueError(
                        "matrix has a root-of-unity eigenvalue; fold the "
                        "resulting periodic factor into r instead"
                    )
        if any(v <= 0 for v in self.r.values):
            raise ValueError("r must be strictly positive")
        # r is checked as a gcd-sequence only where the property is defined
        # (integer values); fractional r (legitimate, e.g. 1/25 entries
        # cancelling a determinant valuation) is exempt.
        window = 2 * self.r.period
        if self.r.is_integral(window):
            if not is_gcd_sequence(self.r, window):
                raise ValueError("r is not a gcd-sequence")
        seen = set()
        for fp in self.primes:
            if not is_prime(fp.p):
                raise ValueError(f"{fp.p} is not prime")
            if fp.p in seen:
                raise ValueError(f"duplicate prime {fp.p}")
            seen.add(fp.p)
            for name, seq in (("s", fp.s), ("t", fp.t)):
                if not seq.is_integral(seq.period):
                    raise ValueError(f"{name} values must be integers")
                if seq.period % fp.p == 0:
                    raise ValueError(f"period of {name} must be coprime to p={fp.p}")
                # s and t enter through p^s, p^t; the gcd-sequence property
                # for exponent sequences is the min property, i.e. the gcd
                # property of the prime-power values.
                powers = PeriodicSequence(tuple(Fraction(fp.p) ** int(v) for v in seq.values))
                if not is_gcd_sequence(powers, 2 * seq.period):
                    raise ValueError(f"p^{name} is not a gcd-sequence")
        return self


@dataclass(frozen=True)
class SigmaSource:
    """A sigma_k provider: one of the variants in the module docstring."""

    kind: str  # "fad" | "table" | "builtin"
    fad: FadSpec = None
    table: tuple = None
    name: str = None
    params: tuple = ()  # sorted (key, value) pairs for builtins

    def param(self, key):
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def describe(self):
        if self.kind == "builtin":
            args = ",".join(f"{k}={v}" for k, v in self.params)
            return f"builtin:{self.name}" + (f",{args}" if args else "")
        if self.kind == "table":
            return f"table[{len(self.table)}]"
        return "fad"


BUILTIN_NAMES = ("FF", "E", "GA", "GM", "periodic")

# Defining polynomial of the degree-4 toral endomorphism example: a Salem
# polynomial with one reciprocal pair of complex eigenvalues on the unit
# circle (2 cos theta = (3 - sqrt 5)/2).
GM_POLY = (1, -3, 3, -3, 1)


def gm_matrix():
    return polyops.companion_matrix(list(GM_POLY))


def fad_source(spec, validate=True):
    if validate:
        spec.validate()
    return SigmaSource(kind="fad", fad=spec)


def table_source(values):
    vals = tuple(int(v) for v in values)
    if any(v < 0 for v in vals):
        raise ValueError("table entries must be >= 0")
    if not vals:
        raise ValueError("empty table")
    return SigmaSource(kind="table", table=vals)


def builtin_source(name, **params):
    """Construct a named example source.

    FF(q): sigma_k = q^k (Frobenius on a finite field of q elements).
    E(p,n): sigma_k = (n^k-1)^2 |n^k-1|_p (elliptic curve reductions flavor).
    GA: sigma_k = 2^(k - |k|_2^(-1)) (additive cellular automaton).
    GM: sigma_k = |det(A^k-1)| |det(A^k-1)|_5 for the Salem companion matrix.
    periodic(values): sigma_k cycles through the given positive integers.
    """
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown builtin {name!r}")
    required = {"FF": ("q",), "E": ("p", "n"), "periodic": ("values",)}.get(name, ())
    for key in required:
        if key not in params:
            raise ValueError(f"builtin {name} requires parameter {key}")
    if name == "FF":
        q = int(params.pop("q"))
        if q < 2:
            raise ValueError("q >= 2 required")
        items = (("q", q),)
    elif name == "E":
        p = int(params.pop("p"))
        n = int(params.pop("n"))
        if p == 2 or not is_prime(p):
            raise ValueError("p must be an odd prime")
        if n < 2:
            raise ValueError("n >= 2 required")
        items = (("n", n), ("p", p))
    elif name == "periodic":
        values = tuple(int(v) for v in params.pop("values"))
        if not values or any(v < 0 for v in values):
            raise ValueError("periodic values must be non-negative integers")
        items = (("values", values),)
    else:
        items = ()
    if params:
        raise ValueError(f"unexpected parameters {sorted(params)} for {name}")
    return SigmaSource(kind="builtin", name=name, params=items)


def fad_spec_for(source):
    """The FadSpec carrying the same sigma as a builtin source.

    Raw tables have no canonical product form and raise.
    """
    if source.kind == "fad":
        return source.fad
    if source.kind != "builtin":
        raise ValueError("no FAD form for a raw table")
    name = source.name
    if name == "FF":
        return FadSpec(c=source.param("q"))
    if name == "GA":
        one = PeriodicSequence.constant(1)
        zero = PeriodicSequence.constant(0)
        return FadSpec(c=2, primes=(FadPrime(2, zero, one),))
    if name == "GM":
        return FadSpec(
            c=1,
            matrix=gm_matrix(),
            r=PeriodicSequence((1, 1, Fraction(1, 25))),
            primes=(FadPrime(5, PeriodicSequence((0, 0, 4)), PeriodicSequence.constant(0)),),
        )
    if name == "E":
        p, n = source.param("p"), source.param("n")
        zero = PeriodicSequence.constant(0)
        if n % p == 0:
            return FadSpec(c=1, matrix=((n, 0), (0, n)))
        d, e = lte_params(n, p)
        r_vals = [Fraction(1)] * d
        r_vals[d - 1] = Fraction(1, p**e)
        s_vals = [0] * d
        s_vals[d - 1] = 1
        return FadSpec(
            c=1,
            matrix=((n, 0), (0, n)),
            r=PeriodicSequence(tuple(r_vals)),
            primes=(FadPrime(p, PeriodicSequence(tuple(s_vals)), zero),),
        )
    if name == "periodic":
        return FadSpec(c=1, r=PeriodicSequence(source.param("values")))
    raise AssertionError(name)


# ---------------------------------------------------------------------------
# sigma evaluation


def _fad_sigma_from_det(spec, k, det_value):
    """Assemble sigma_k from a precomputed det(A^k - 1) (or None if no matrix)."""
    value = Fraction(spec.c) ** k
    if spec.matrix is not None:
        if det_value == 0:
            return 0
        value *= abs(det_value)
    value *= spec.r.at(k)
    for fp in spec.primes:
        v, absk = p_valuation(k, fp.p)
        s = int(fp.s.at(k))
        t = int(fp.t.at(k))
        value *= absk**s
        value *= Fraction(1, fp.p ** (t * fp.p**v))
    if value.denominator != 1:
        raise ValueError(f"non-realizable parameters at k={k}")
    if value < 0:
        raise ValueError(f"negative sigma at k={k}")
    return int(value)


def sigma_eval(source, k):
    """Exact sigma_k for any source; k >= 1."""
    if k < 1:
        raise ValueError("k >= 1 required")
    if source.kind == "table":
        if k > len(source.table):
            raise ValueError(f"table covers only k <= {len(source.table)}")
        return source.table[k - 1]
    if source.kind == "fad":
        spec = source.fad
        det_value = None
        if spec.matrix is not None:
            A = [list(row) for row in spec.matrix]
            M = polyops.mat_sub(polyops.mat_pow(A, k), polyops.mat_identity(len(A)))
            det_value = polyops.int_det(M)
        return _fad_sigma_from_det(spec, k, det_value)
    name = source.name
    if name == "FF":
        return source.param("q") ** k
    if name == "GA":
        v, _ = p_valuation(k, 2)
        return 2 ** (k - 2**v)
    if name == "E":
        p, n = source.param("p"), source.param("n")
        m = n**k - 1
        if n % p == 0:
            return m * m
        v = nk_minus_one_valuation(n, k, p)
        return m * m // p**v
    if name == "GM":
        A = gm_matrix()
        M = polyops.mat_sub(polyops.mat_pow(A, k), polyops.mat_identity(4))
        det_value = polyops.int_det(M)
        v, _ = p_valuation(det_value, 5) if det_value else (0, None)
        return abs(det_value) // 5**v
    if name == "periodic":
        values = source.param("values")
        return values[(k - 1) % len(values)]
    raise AssertionError(name)


def sigma_table(source, X):
    """[sigma_k]_{k=0..X} with index 0 a zero placeholder (bulk, exact).

    Matrix determinants run through exterior-power trace recurrences, so the
    cost per k is a handful of big-integer operations instead of a matrix
    power.
    """
    if X < 0:
        raise ValueError("X >= 0 required")
    out = [0] * (X + 1)
    if X == 0:
        return out
    if source.kind == "table":
        if X > len(source.table):
            raise ValueError(f"table covers only k <= {len(source.table)}")
        out[1 : X + 1] = source.table[:X]
        return out
    if source.kind == "builtin" and source.name == "FF":
        q = source.param("q")
        acc = 1
        for k in range(1, X + 1):
            acc *= q
            out[k] = acc
        return out
    if source.kind == "builtin" and source.name == "E":
        p, n = source.param("p"), source.param("n")
        de = None if n % p == 0 else lte_params(n, p)
        acc = 1
        for k in range(1, X + 1):
            acc *= n
            m = acc - 1
            if de is None:
                out[k] = m * m
            else:
                v = nk_minus_one_valuation(n, k, p, *de)
                out[k] = m * m // p**v
        return out
    if source.kind == "builtin" and source.name in ("GA", "GM", "periodic"):
        if source.name == "GA":
            for k in range(1, X + 1):
                v, _ = p_valuation(k, 2)
                out[k] = 2 ** (k - 2**v)
            return out
        if source.name == "periodic":
            values = source.param("values")
            for k in range(1, X + 1):
                out[k] = values[(k - 1) % len(values)]
            return out
        source = fad_source(fad_spec_for(source), validate=False)
        # fall through to the fad path with the GM spec, then undo the r/s
        # bookkeeping: the GM builtin and its spec agree exactly.
    spec = source.fad
    dets = None
    if spec.matrix is not None:
        dets = polyops.det_iterate_minus_identity([list(row) for row in spec.matrix], X)
    for k in range(1, X + 1):
        out[k] = _fad_sigma_from_det(spec, k, dets[k] if dets is not None else None)
    return out


# ---------------------------------------------------------------------------
# growth rate


@dataclass(frozen=True)
class GrowthRate:
    """Lambda = exp limsup log(sigma_k)/k with an exact value when known."""

    value: object  # mpf
    exact: Fraction = None
    low_confidence: bool = False

    def __float__(self):
        return float(self.value)


def _exact_rate(q, precision):
    q = Fraction(q)
    with mp.workprec(precision + 16):
        v = mp.mpf(q.numerator) / q.denominator
    return GrowthRate(value=v, exact=q)


def growth_rate(source, precision=128):
    """Growth rate Lambda of sigma_k at the given binary precision.

    FAD sources use c times the product of |root| > 1 of the characteristic
    polynomial (sampling sigma_k^(1/k) would be polluted by the r and p-adic
    factors, which are subexponential). Tables get an empirical tail
    estimate flagged low-confidence.
    """
    if source.kind == "builtin":
        name = source.name
        if name == "FF":
            return _exact_rate(source.param("q"), precision)
        if name == "E":
            return _exact_rate(source.param("n") ** 2, precision)
        if name == "GA":
            return _exact_rate(2, precision)
        if name == "periodic":
            return _exact_rate(1, precision)
        if name == "GM":
            with mp.workprec(precision + 16):
                v = +polyops.outside_unit_product(list(GM_POLY), precision)
            return GrowthRate(value=v)
    if source.kind == "fad":
        spec = source.fad
        if spec.matrix is None:
            return _exact_rate(spec.c, precision)
        cp = polyops.charpoly([list(row) for row in spec.matrix])
        # Split off exact unit-circle content so the outside product only
        # sees well-separated roots.
        rev = polyops.poly_reversal(cp)
        g = polyops.poly_gcd(cp, rev)
        h = cp
        if polyops.poly_degree(g) >= 1:
            h, r = polyops.poly_divmod(cp, g)
            assert polyops.poly_degree(r) < 0
            # unit-circle factors of g contribute nothing to the product;
            # off-circle reciprocal pairs contribute via g as well, so keep
            # the g-part product too.
        with mp.workprec(precision + 16):
            prod = polyops.outside_unit_product(cp, precision)
            if abs(prod - 1) < mp.mpf(2) ** (-(precision // 2)):
                return _exact_rate(spec.c, precision)
            v = +(spec.c * prod)
        return GrowthRate(value=v)
    # raw table: empirical estimate from the tail
    table = source.table
    if len(table) < 8:
        raise ValueError("table too short for a growth estimate (need >= 8)")
    with mp.workprec(precision + 16):
        best = mp.mpf(1)
        for k in range(len(table) // 2, len(table)):
            s = table[k]
            if s > 0:
                best = max(best, mp.mpf(s) ** (mp.mpf(1) / (k + 1)))
        v = +best
    return GrowthRate(value=v, low_confidence=True)


# ---------------------------------------------------------------------------
# fluctuation spectrum


@dataclass(frozen=True)
class SpectrumReport:
    """Unit-circle eigenvalue data of the matrix part.

    m conjugate pairs e^(+-i theta_j); theta_rational_flags[j] is True iff
    theta_j is a rational multiple of pi, certified by exact cyclotomic
    divisibility (never by numerics).
    """

    lam: object  # mpf: c * product of |roots| > 1
    unit_angles: tuple
    m: int
    theta_rational_flags: tuple
    rational_angles: tuple  # (num, den) pairs meaning theta = 2*pi*num/den, or None
    contains_root_of_unity: bool
    notes: tuple = ()


def fluctuation_spectrum(A, precision=128, c=1, extra_notes=()):
    """Isolate unit-circle eigenvalues of an integer matrix exactly-first.

    The gcd of the characteristic polynomial f with its reversal contains
    every unit-circle eigenvalue (they come in reciprocal-conjugate pairs);
    cyclotomic factors of that gcd are divided out exactly and flagged as
    rational angles; the rest is rooted numerically and filtered to |z| = 1.
    """
    A = [list(row) for row in A]
    f = polyops.charpoly(A)
    rev = polyops.poly_reversal(f)
    g = polyops.poly_gcd(f, rev)
    angles = []  # (theta mpf, rational flag, (num, den) | None)
    contains_unity = False
    with mp.workprec(precision + 48):
        if polyops.poly_degree(g) >= 1:
            h = [Fraction(c_) for c_ in g]
            for n in polyops.cyclotomic_divisors(h):
                phi = polyops.cyclotomic(n)
                while polyops.poly_divides(phi, h):
                    contains_unity = True
                    q, _ = polyops.poly_divmod(h, phi)
                    h = q
                    for num in range(1, n):
                        if gcd(num, n) != 1:
                            continue
                        theta = 2 * mp.pi * num / n
                        if mp.mpf(0) < theta < mp.pi:
                            angles.append((+theta, True, (num, n)))
            if polyops.poly_degree(h) >= 1:
                eps = mp.mpf(2) ** (-(precision // 2))
                for root in polyops.poly_roots(h, precision):
                    if abs(abs(root) - 1) < eps and mp.im(root) > eps:
                        angles.append((+mp.arg(root), False, None))
        angles.sort(key=lambda a: a[0])
        lam = +(c * polyops.outside_unit_product(f, precision))
    return SpectrumReport(
        lam=lam,
        unit_angles=tuple(a[0] for a in angles),
        m=len(angles),
        theta_rational_flags=tuple(a[1] for a in angles),
        rational_angles=tuple(a[2] for a in angles),
        contains_root_of_unity=contains_unity,
        notes=tuple(extra_notes),
    )


def spectrum_for(source, precision=128):
    """SpectrumReport for a source's matrix part (m = 0 when there is none)."""
    spec = fad_spec_for(source) if source.kind != "fad" else source.fad
    notes = ()
    if source.kind == "builtin" and source.name == "GM":
        with mp.workprec(precision + 16):
            c1 = mp.acos((3 - mp.sqrt(5)) / 4)
            c2 = mp.acos((3 - mp.sqrt(5)) / 8)
        notes = (
            "exact roots give 2 cos(theta) = (3 - sqrt 5)/2, "
            f"theta = {mp.nstr(c1, 12)}",
            f"alternative printed reading cos(theta) = (3 - sqrt 5)/8 "
            f"would give theta = {mp.nstr(c2, 12)} (rejected by the exact roots)",
        )
    if spec.matrix is None:
        with mp.workprec(precision + 16):
            lam = mp.mpf(spec.c)
        return SpectrumReport(
            lam=lam,
            unit_angles=(),
            m=0,
            theta_rational_flags=(),
            rational_angles=(),
            contains_root_of_unity=False,
            notes=notes,
        )
    return fluctuation_spectrum(
        [list(row) for row in spec.matrix], precision=precision, c=spec.c, extra_notes=notes
    )


# ---------------------------------------------------------------------------
# Dold validation


@dataclass(frozen=True)
class DoldReport:
    ok: bool
    first_failure: tuple = None  # (ell, reason)

    def __bool__(self):
        return self.ok


def validate_dold(sigma):
    """Check the Dold integrality condition on a prefix sigma_1..sigma_X.

    For every ell <= X the Mobius-transformed sum sum_{n | ell} mu(ell/n)
    sigma_n must be divisible by ell with non-negative quotient (the
    would-be count of prime orbits of length ell).
    """
    sigma = list(sigma)
    X = len(sigma)
    if X < 1:
        raise ValueError("need at least sigma_1")
    for ell in range(1, X + 1):
        total = 0
        for n in divisors(ell):
            total += mobius(ell // n) * sigma[n - 1]
        q, r = divmod(total, ell)
        if r:
            return DoldReport(False, (ell, f"Mobius sum {total} not divisible by {ell}"))
        if q < 0:
            return DoldReport(False, (ell, f"negative orbit count {q}"))
    return DoldReport(True, None)


# ---------------------------------------------------------------------------
# JSON ingestion (field names are part of the CLI contract)


def _periodic_from_json(obj):
    values = tuple(Fraction(str(v)) for v in obj["values"])
    seq = PeriodicSequence(values)
    period = obj.get("period", seq.period)
    if period != seq.period:
        raise ValueError("period field disagrees with values length")
    return seq


def source_from_json(obj):
    """Build a SigmaSource from the parsed JSON system description."""
    kind = obj.get("type")
    if kind == "table":
        return table_source(obj["sigma"])
    if kind == "builtin":
        name = obj["name"]
        params = {k: v for k, v in obj.items() if k not in ("type", "name")}
        return builtin_source(name, **params)
    if kind == "fad":
        spec = FadSpec(
            c=int(obj.get("c", 1)),
            matrix=tuple(tuple(row) for row in obj["matrix"]) if obj.get("matrix") else None,
            r=_periodic_from_json(obj["r"]) if obj.get("r") else PeriodicSequence.constant(1),
            primes=tuple(
                FadPrime(
                    p=int(e["p"]),
                    s=_periodic_from_json(e["s"]),
                    t=_periodic_from_json(e["t"]),
                )
                for e in obj.get("primes", ())
            ),
        )
        return fad_source(spec)
    raise ValueError(f"unknown system type {kind!r}")
