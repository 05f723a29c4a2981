"""
Tables of normalized prime eigenvalues and their on-disk cache.

"""
import hashlib
import logging
import math
from pathlib import Path

import numpy as np

from heckesign.arith import sieve as build_sieve
from heckesign.errors import (
    CacheMissError,
    DeligneBoundError,
    RamifiedPrimeError,
    SourceExhaustedError,
)
from heckesign.newforms.elliptic import EllipticCurve, ec_ap_many
from heckesign.newforms.hecke import hecke_recurrence, hecke_recurrence_exact
from heckesign.newforms.spec import PRESETS, EtaProductDelta, ExplicitTable, NewformSpec, get_preset
from heckesign.qseries import DELTA_TABLE_BOUND, ramanujan_tau


logger = logging.getLogger(__name__)

DELIGNE_SLACK = 1e-12


class EigenvalueTable:
    """
    Normalized eigenvalues lambda(p) = a(p) / p^((k - 1)/2) of a newform
    at every prime p <= bound not dividing the level.

    Parameters
    ----------

    spec : NewformSpec
    primes : ascending sequence of primes
    raw : sequence of exact integers a(p), aligned with primes
    bound : largest prime requested (the table covers primes <= bound)

    Notes
    -----

    Every stored value satisfies Deligne's bound |lambda(p)| <= 2;
    a violation raises DeligneBoundError when the table is built.

    """
    def __init__(self, spec, primes, raw, bound):
        if len(primes) != len(raw):
            raise ValueError("primes and raw coefficients must have the same length")
        self.spec = spec
        self.bound = bound
        self.primes = np.asarray(primes, dtype=np.int64)
        self.primes.flags.writeable = False
        self.raw = tuple(int(a) for a in raw)
        self.lambdas = np.array(
            [normalize(a, p, spec.weight) for p, a in zip(self.primes.tolist(), self.raw)],
            dtype=float,
        )
        self.lambdas.flags.writeable = False
        self._index = {p: i for i, p in enumerate(self.primes.tolist())}

        violations = np.flatnonzero(np.abs(self.lambdas) > 2 + DELIGNE_SLACK)
        if len(violations):
            p = int(self.primes[violations[0]])
            raise DeligneBoundError(
                f"{spec.label}: |lambda({p})| = {abs(self.lambdas[violations[0]])!r} exceeds 2"
            )

    def __repr__(self):
        return f"EigenvalueTable(label='{self.spec.label}', bound={self.bound}, primes={len(self)})"

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self._index

    @property
    def prime_lambdas(self):
        """
        Mapping p -> lambda(p).
        """
        return dict(zip(self.primes.tolist(), self.lambdas.tolist()))

    def _position(self, p):
        if self.spec.divides_level(p):
            raise RamifiedPrimeError(f"p={p} divides the level {self.spec.level} of {self.spec.label}")
        try:
            return self._index[p]
        except KeyError:
            raise SourceExhaustedError(
                f"p={p} is not in the {self.spec.label} table (bound {self.bound})"
            ) from None

    def lambda_at(self, p):
        return float(self.lambdas[self._position(p)])

    def raw_at(self, p):
        return self.raw[self._position(p)]

    def coefficient_prime_power(self, p, nu):
        """
        Exact integer a(p^nu) by the unnormalized Hecke recurrence.
        """
        return hecke_recurrence_exact(self.raw_at(p), nu, p, self.spec.weight)

    def restrict(self, x):
        """
        Table of the primes <= x only.
        """
        n = int(np.searchsorted(self.primes, x, side="right"))
        return EigenvalueTable(self.spec, self.primes[:n], self.raw[:n], min(x, self.bound))


def normalize(a, p, weight):
    """
    a / p^((k - 1)/2) for even k, dividing exact integers before taking sqrt(p).
    """
    return a / p ** ((weight - 2) // 2) / math.sqrt(p)


def lambda_prime_power(table, p, nu):
    """
    Normalized eigenvalue lambda(p^nu) at a good prime.

    Computed from lambda(p) by the Hecke recurrence; it agrees with
    sin((nu + 1) theta_p) / sin(theta_p) where lambda(p) = 2 cos(theta_p).

    Parameters
    ----------

    table : EigenvalueTable containing p
    p : prime not dividing the level
    nu : nonnegative integer

    Examples
    --------

    >>> from heckesign.newforms import DELTA, build_table
    >>> t = build_table(DELTA, 10)
    >>> lambda_prime_power(t, 2, 0)
    1.0

    """
    return hecke_recurrence(table.lambda_at(p), nu)


def build_table(spec, prime_limit, cache_dir=None, build=True, workers=1, sieve=None):
    """
    Compute (or load from cache) the eigenvalue table of spec up to prime_limit.

    Parameters
    ----------

    spec : NewformSpec
    prime_limit : positive integer, largest prime to include
    cache_dir : optional directory; when given the table is read from
        cache_file_name(spec, prime_limit) if present and written there
        otherwise
    build : if False, a missing cache file raises CacheMissError
    workers : number of processes used for point counting
    sieve : optional PrimeSieve covering prime_limit

    Raises
    ------

    SourceExhaustedError if the source cannot supply every prime
    DeligneBoundError if a computed value violates |lambda(p)| <= 2

    """
    if isinstance(prime_limit, bool) or not isinstance(prime_limit, int):
        raise TypeError(f"prime_limit must be integer type, got {type(prime_limit).__name__}")
    if prime_limit < 1:
        raise ValueError("prime_limit must be positive")

    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / cache_file_name(spec, prime_limit)
        if path.exists():
            logger.debug("loading %s from cache %s", spec.label, path)
            return load_table(spec, path, prime_limit)
        if not build:
            raise CacheMissError(f"no cached table at {path} and building is disabled")

    if prime_limit < 2:
        table = EigenvalueTable(spec, [], [], prime_limit)
    else:
        if sieve is None or sieve.limit < prime_limit:
            sieve = build_sieve(prime_limit)
        primes = [p for p in sieve.primes_up_to(prime_limit).tolist() if not spec.divides_level(p)]
        raw = _compute_raw(spec, primes, prime_limit, workers)
        table = EigenvalueTable(spec, primes, raw, prime_limit)
    logger.info("built %s table: %d primes up to %d", spec.label, len(table), prime_limit)

    if path is not None:
        write_table(table, path)
    return table


def _compute_raw(spec, primes, prime_limit, workers):
    source = spec.source
    if isinstance(source, EtaProductDelta):
        if prime_limit > DELTA_TABLE_BOUND:
            raise SourceExhaustedError(
                f"tau is tabulated up to {DELTA_TABLE_BOUND}, requested primes up to {prime_limit}"
            )
        tau = ramanujan_tau(prime_limit)
        return [tau[p] for p in primes]

    if isinstance(source, EllipticCurve):
        return ec_ap_many(source, primes, workers=workers)

    if isinstance(source, ExplicitTable):
        _, values = read_table_csv(source.path)
        missing = [p for p in primes if p not in values]
        if missing:
            raise SourceExhaustedError(
                f"{source.path} has no a_p for p={missing[0]} ({len(missing)} primes missing)"
            )
        return [values[p] for p in primes]

    raise TypeError(f"unknown newform source {type(source).__name__}")


def cache_file_name(spec, prime_limit):
    """
    "<label>_<prime_limit>.csv", with the first 12 hex digits of the
    source file's SHA-256 appended for explicit tables.
    """
    if isinstance(spec.source, ExplicitTable):
        digest = hashlib.sha256(Path(spec.source.path).read_bytes()).hexdigest()[:12]
        return f"{spec.label}_{prime_limit}_{digest}.csv"
    return f"{spec.label}_{prime_limit}.csv"


def format_header(spec):
    return f"# label={spec.label} weight={spec.weight} level={spec.level}"


def write_table(table, path):
    """
    Write a table as UTF-8 CSV: a header comment then "p,a_p" lines.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [format_header(table.spec)]
    lines.extend(f"{p},{a}" for p, a in zip(table.primes.tolist(), table.raw))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    logger.debug("wrote %d rows to %s", len(table), path)


def read_table_csv(path):
    """
    Parse a "p,a_p" CSV file.

    Returns (header, values) where header is a dict of the key=value
    pairs on a leading "#" line (possibly empty) and values maps p to
    the exact integer a_p. Rows must be in ascending order of p.

    """
    header = {}
    values = {}
    last = 0
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if lineno == 1:
                    header = dict(
                        item.split("=", 1) for item in line[1:].split() if "=" in item
                    )
                continue
            try:
                p_text, a_text = line.split(",")
                p, a = int(p_text), int(a_text)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected 'p,a_p' with integers, got {line!r}") from None
            if p <= last:
                raise ValueError(f"{path}:{lineno}: primes must be strictly ascending")
            values[p] = a
            last = p
    return header, values


def load_table(spec, path, prime_limit):
    """
    Read a cached table, checking that its header matches spec.
    """
    header, values = read_table_csv(path)
    expected = {"label": spec.label, "weight": str(spec.weight), "level": str(spec.level)}
    if header != expected:
        raise ValueError(f"cache file {path} header {header} does not match {expected}")
    primes = sorted(values)
    return EigenvalueTable(spec, primes, [values[p] for p in primes], prime_limit)


def form_from_table_file(path):
    """
    NewformSpec for an explicit "p,a_p" file whose header names label, weight and level.
    """
    header, _ = read_table_csv(path)
    try:
        label, weight, level = header["label"], int(header["weight"]), int(header["level"])
    except (KeyError, ValueError):
        raise ValueError(f"{path} needs a '# label=.. weight=.. level=..' header line") from None
    return NewformSpec(label, weight=weight, level=level, source=ExplicitTable(path))


def resolve_form(name):
    """
    A built-in preset by label, or the explicit table stored at the path name.
    """
    if name in PRESETS or not Path(name).is_file():
        return get_preset(name)
    return form_from_table_file(name)
