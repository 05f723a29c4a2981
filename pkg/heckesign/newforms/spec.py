from dataclasses import dataclass
from pathlib import Path

from heckesign.newforms.elliptic import EllipticCurve


@dataclass(frozen=True)
class EtaProductDelta:
    """
    Source for Ramanujan's Delta: coefficients from q prod(1 - q^n)^24.
    """


@dataclass(frozen=True)
class ExplicitTable:
    """
    Source reading integer a(p) values from a "p,a_p" CSV file.
    """
    path: Path

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))


@dataclass(frozen=True)
class NewformSpec:
    """
    A concrete normalized newform of even weight and trivial character.

    Parameters
    ----------

    label : short name used in reports and cache file names
    weight : even integer >= 2
    level : positive integer
    source : EtaProductDelta, EllipticCurve or ExplicitTable
    cm_free : whether the user asserts the form has no complex
        multiplication (not checked)

    Notes
    -----

    Freeness from complex multiplication and the "not twists of each
    other" hypothesis are assertions made by whoever builds the spec.
    Nothing here can decide them.

    """
    label: str
    weight: int
    level: int
    source: object
    cm_free: bool = True

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("label must be a non-empty string")
        if any(c in self.label for c in "/\\ \t\n,"):
            raise ValueError(f"label {self.label!r} may not contain separators or whitespace")
        for name in ("weight", "level"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be integer type, got {type(value).__name__}")
        if self.weight < 2 or self.weight % 2:
            raise ValueError(f"weight must be even and at least 2, got {self.weight}")
        if self.level < 1:
            raise ValueError("level must be positive")

        if isinstance(self.source, EtaProductDelta):
            if (self.weight, self.level) != (12, 1):
                raise ValueError("the eta product Delta has weight 12 and level 1")
        elif isinstance(self.source, EllipticCurve):
            if self.weight != 2:
                raise ValueError("elliptic curve newforms have weight 2")
        elif not isinstance(self.source, ExplicitTable):
            raise TypeError(f"unknown newform source {type(self.source).__name__}")

    def divides_level(self, p):
        return self.level % p == 0


DELTA = NewformSpec("delta", weight=12, level=1, source=EtaProductDelta())

# smallest standard conductors: 11a and 37a, both without CM and not twists of each other
EC11 = NewformSpec("ec11", weight=2, level=11, source=EllipticCurve(0, -1, 1, -10, -20))
EC37 = NewformSpec("ec37", weight=2, level=37, source=EllipticCurve(0, 0, 1, -1, 0))

PRESETS = {spec.label: spec for spec in (DELTA, EC11, EC37)}


def get_preset(label):
    """
    Look up a built-in newform by label.
    """
    try:
        return PRESETS[label]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown form label {label!r} (known: {known})") from None
