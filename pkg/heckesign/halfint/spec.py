"""
Data describing a half-integral weight eigenform through its Shimura lift.

"""
import json
import math
from dataclasses import dataclass
from pathlib import Path

from heckesign.arith import is_squarefree, kronecker
from heckesign.newforms.spec import DELTA, EC11, NewformSpec, get_preset


@dataclass(frozen=True)
class CharacterTable:
    """
    A real Dirichlet character given by its values on residues 0..m - 1.

    Parameters
    ----------

    modulus : positive integer m
    values : sequence of m integers in {-1, 0, 1}, values[d] = chi(d)

    Notes
    -----

    The table is checked to be a real character: chi(1) = 1,
    chi(d) = 0 exactly when gcd(d, m) > 1, and chi(ab) = chi(a) chi(b)
    for all residues a, b.

    Examples
    --------

    >>> chi = trivial_character(1)
    >>> chi(3), chi(4)
    (1, 0)

    """
    modulus: int
    values: tuple

    def __post_init__(self):
        m = self.modulus
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise ValueError(f"modulus must be a positive integer, got {m!r}")
        values = tuple(int(v) for v in self.values)
        if len(values) != m:
            raise ValueError(f"need {m} character values, got {len(values)}")
        if any(v not in (-1, 0, 1) for v in values):
            raise ValueError("a real character takes values in {-1, 0, 1}")
        for d, v in enumerate(values):
            if (v == 0) != (math.gcd(d, m) > 1):
                raise ValueError(f"chi({d}) = {v} but gcd({d}, {m}) = {math.gcd(d, m)}")
        if m > 1 and values[1] != 1:
            raise ValueError("chi(1) must be 1")
        for a in range(m):
            for b in range(a, m):
                if values[a * b % m] != values[a] * values[b]:
                    raise ValueError(f"values are not multiplicative at {a} * {b} mod {m}")
        object.__setattr__(self, "values", values)

    def __call__(self, d):
        return self.values[d % self.modulus]

    @property
    def is_trivial(self):
        return all(v == (math.gcd(d, self.modulus) == 1) for d, v in enumerate(self.values))


def trivial_character(level):
    """
    The principal character modulo 4 * level.
    """
    m = 4 * level
    return CharacterTable(m, tuple(int(math.gcd(d, m) == 1) for d in range(m)))


def quadratic_character(discriminant, level):
    """
    The character d -> kronecker(D, d), viewed modulo 4 * level.

    D must be a fundamental discriminant (or 1) dividing 4 * level.

    Examples
    --------

    >>> chi = quadratic_character(-4, 1)
    >>> chi.values
    (0, 1, 0, -1)

    """
    m = 4 * level
    if not is_fundamental_discriminant(discriminant):
        raise ValueError(f"{discriminant} is not a fundamental discriminant")
    if m % discriminant:
        raise ValueError(f"discriminant {discriminant} does not divide {m}")
    values = tuple(kronecker(discriminant, d) if math.gcd(d, m) == 1 else 0 for d in range(m))
    return CharacterTable(m, values)


def table_character(level, values):
    """
    Character modulo 4 * level from an explicit value list.
    """
    return CharacterTable(4 * level, tuple(values))


def is_fundamental_discriminant(D):
    """
    True for 1 and for fundamental discriminants of quadratic fields.
    """
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


@dataclass(frozen=True)
class HalfIntegralSpec:
    """
    A Hecke eigenform of weight k + 1/2 on Gamma_0(4N) with character chi,
    described by its Shimura lift.

    Parameters
    ----------

    label : short name used in reports
    k : positive integer
    level : odd squarefree positive integer N
    t : squarefree positive integer, normalized so that a(t) = 1
    chi : CharacterTable modulo 4N
    underlying : NewformSpec of weight 2k standing in for the lift

    Notes
    -----

    Coefficients a(t n^2) are synthesized from the underlying table
    rather than computed from a genuine half-integral weight form.
    That the lift is free of complex multiplication and independent of
    t, and that two lifts are not twists of each other, are assertions
    made by whoever builds the spec.

    """
    label: str
    k: int
    level: int
    t: int
    chi: CharacterTable
    underlying: NewformSpec

    def __post_init__(self):
        for name in ("k", "level", "t"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be integer type, got {type(value).__name__}")
            if value < 1:
                raise ValueError(f"{name} must be positive")
        if self.level % 2 == 0 or not is_squarefree(self.level):
            raise ValueError(f"level must be odd and squarefree, got {self.level}")
        if not is_squarefree(self.t):
            raise ValueError(f"t must be squarefree, got {self.t}")
        if self.chi.modulus != 4 * self.level:
            raise ValueError(f"chi must be a character modulo {4 * self.level}, got modulus {self.chi.modulus}")
        if self.underlying.weight != 2 * self.k:
            raise ValueError(
                f"the lift of weight {self.k} + 1/2 has weight {2 * self.k}, "
                f"but {self.underlying.label} has weight {self.underlying.weight}"
            )

    def excludes(self, p):
        """
        True for the primes dividing 2N and the level of the lift.
        """
        return p == 2 or self.level % p == 0 or self.underlying.divides_level(p)


DELTA_LIFT = HalfIntegralSpec("delta-lift", k=6, level=1, t=1, chi=trivial_character(1), underlying=DELTA)
EC11_LIFT = HalfIntegralSpec("ec11-lift", k=1, level=11, t=1, chi=trivial_character(11), underlying=EC11)

HALFINT_PRESETS = {spec.label: spec for spec in (DELTA_LIFT, EC11_LIFT)}


def get_halfint_preset(label):
    try:
        return HALFINT_PRESETS[label]
    except KeyError:
        known = ", ".join(sorted(HALFINT_PRESETS))
        raise ValueError(f"unknown half-integral label {label!r} (known: {known})") from None


def halfint_spec_from_dict(data, label=None):
    """
    Build a HalfIntegralSpec from a mapping of the form

        {"k": 6, "N": 1, "t": 1,
         "chi": {"kind": "trivial" | "quadratic" | "table", "D": -4, "values": [...]},
         "underlying": "delta"}

    """
    data = _validate_mapping(data, "half-integral spec")
    k, level, t = (_require(data, key, "half-integral spec") for key in ("k", "N", "t"))
    underlying = get_preset(_require(data, "underlying", "half-integral spec"))
    chi_data = _validate_mapping(data.get("chi", {"kind": "trivial"}), "chi")
    kind = chi_data.get("kind")
    if kind == "trivial":
        chi = trivial_character(level)
    elif kind == "quadratic":
        chi = quadratic_character(_require(chi_data, "D", "quadratic chi"), level)
    elif kind == "table":
        chi = table_character(level, _require(chi_data, "values", "table chi"))
    else:
        raise ValueError(f"unknown character kind {kind!r}")
    label = label or data.get("label") or f"{underlying.label}-k{k}-N{level}-t{t}"
    return HalfIntegralSpec(label, k=k, level=level, t=t, chi=chi, underlying=underlying)


def load_halfint_spec(path):
    """
    Read a HalfIntegralSpec from a JSON file.
    """
    path = Path(path)
    data = _validate_mapping(json.loads(path.read_text(encoding="utf-8")), str(path))
    return halfint_spec_from_dict(data, label=data.get("label") or path.stem)


def _validate_mapping(data, what):
    if not isinstance(data, dict):
        raise TypeError(f"{what} must be a JSON object, got {type(data).__name__}")
    return data


def _require(data, key, what):
    if key not in data:
        raise ValueError(f"{what} is missing {key!r}")
    return data[key]
