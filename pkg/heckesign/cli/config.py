"""
Run configuration: dataclass defaults, overridden by a JSON config file,
overridden by explicit command-line flags.

"""
import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from heckesign.newforms import build_table


CACHE_ENV = "HECKESIGN_CACHE_DIR"
DEFAULT_CACHE_DIR = ".heckesign-cache"

# commands whose nu values must be odd
ODD_NU_COMMANDS = {"measure", "prime-density", "halfint-density"}

# locations rather than inputs; left out of the config embedded in reports
_LOCATION_FIELDS = ("out", "cache_dir", "config")


@dataclass
class RunConfig:
    """
    Every parameter of a run.

    Experiments read the fields they need and ignore the rest; the
    verify_* fields size the acceptance suite run by verify-all.
    """
    command: str = ""

    # forms
    form: str = "delta"
    f1: str = "delta"
    f2: str = "ec11"
    h1: str = "delta-lift"
    h2: str = "ec11-lift"

    # experiment parameters
    limit: int = 10 ** 4
    nu: list = field(default_factory=lambda: [1])
    p: int = 5
    x: int = 10 ** 5
    bins: int = 8
    box: list = field(default_factory=lambda: [0.0, 0.5, 0.0, 0.5])
    sign_class: str = "pos"
    eps: list = field(default_factory=lambda: [0.5, 0.1, 0.01])
    measure_eps: list = field(default_factory=lambda: [0.0])
    height: int = 1000
    tol: float = 1e-9
    seed: int = 0
    samples: int = 10 ** 5
    window: int = None
    workers: int = 1

    # acceptance tolerances
    check: bool = False
    nu_tolerance: float = 0.02
    density_tolerance: float = 0.03
    zero_density_max: float = 0.01
    deviation_max: float = 0.15
    min_expected: float = 200.0
    ks_max: float = 0.02
    sampler_ks_max: float = 0.01

    # verify-all sizes
    verify_tau_limit: int = 10 ** 5
    verify_identity_limit: int = 10 ** 4
    verify_identity_nu: int = 200
    verify_deligne_ec_limit: int = 10 ** 6
    verify_deligne_delta_limit: int = 10 ** 5
    verify_measure_nu: int = 99
    verify_panels: int = 10 ** 6
    verify_x: int = 10 ** 6
    verify_density_limit: int = 10 ** 5
    verify_density_nu: list = field(default_factory=lambda: [1, 3, 5])
    verify_halfint_nu: list = field(default_factory=lambda: [1, 3])
    verify_mobius_n: int = 200
    verify_mobius_specs: int = 100
    verify_draws: int = 10 ** 4
    verify_determinism_limit: int = 10 ** 4

    # locations
    out: str = "."
    cache_dir: str = None
    build: bool = True
    config: str = None

    @classmethod
    def field_names(cls):
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def from_sources(cls, file_values=None, flag_values=None):
        """
        Defaults, then file_values, then flag_values; unknown keys are rejected.
        """
        known = set(cls.field_names())
        merged = {}
        for source, values in (("config file", file_values or {}), ("flags", flag_values or {})):
            unknown = sorted(set(values) - known)
            if unknown:
                raise ValueError(f"unknown {source} keys: {', '.join(unknown)}")
            merged.update(values)
        return cls(**merged)

    @property
    def cache_path(self):
        """
        --cache-dir, else the config file value, else $HECKESIGN_CACHE_DIR, else ./.heckesign-cache.
        """
        return Path(self.cache_dir or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR)

    @property
    def out_path(self):
        return Path(self.out)

    def table(self, spec, limit):
        """
        Eigenvalue table of spec up to limit through the configured cache.
        """
        return build_table(spec, limit, cache_dir=self.cache_path, build=self.build, workers=self.workers)

    def as_dict(self):
        """
        Resolved parameters for embedding in reports, without locations.
        """
        values = dataclasses.asdict(self)
        for name in _LOCATION_FIELDS:
            values.pop(name)
        return values

    def validate(self):
        """
        Check bounds, nu parity and eps ranges, and that the output directory is writable.
        """
        for name in (
            "limit", "p", "x", "bins", "height", "samples", "workers",
            "verify_tau_limit", "verify_identity_limit", "verify_identity_nu",
            "verify_deligne_ec_limit", "verify_deligne_delta_limit", "verify_measure_nu",
            "verify_panels", "verify_x", "verify_density_limit", "verify_mobius_n",
            "verify_mobius_specs", "verify_draws", "verify_determinism_limit",
        ):
            _validate_positive_int(getattr(self, name), name)
        if self.window is not None:
            _validate_positive_int(self.window, "window")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

        nus = list(self.nu)
        if not nus:
            raise ValueError("at least one nu is needed")
        for nu in nus + list(self.verify_density_nu) + list(self.verify_halfint_nu):
            _validate_positive_int(nu, "nu")
        if self.command in ODD_NU_COMMANDS:
            even = [nu for nu in nus if nu % 2 == 0]
            if even:
                raise ValueError(f"{self.command} needs odd nu, got {even}")
        for nu in list(self.verify_density_nu) + list(self.verify_halfint_nu):
            if nu % 2 == 0:
                raise ValueError(f"verify nu values must be odd, got {nu}")

        for eps in list(self.eps) + list(self.measure_eps):
            if not 0 <= eps < 1:
                raise ValueError(f"eps must lie in [0, 1), got {eps!r}")
        if self.command == "halfint-density" and any(eps == 0 for eps in self.eps):
            raise ValueError("halfint-density needs eps in (0, 1)")
        if len(self.box) != 4:
            raise ValueError("box needs four values u1 v1 u2 v2")

        out = self.out_path
        out.mkdir(parents=True, exist_ok=True)
        if not os.access(out, os.W_OK):
            raise ValueError(f"output directory {out} is not writable")
        return self


def load_config_file(path):
    """
    Read a JSON object of RunConfig fields.
    """
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path} must hold a JSON object")
    return data


def _validate_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be integer type, got {type(value).__name__}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
