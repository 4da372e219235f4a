"""Run configuration: line-oriented ``key = value`` files.

Lines are UTF-8, ``#`` starts a comment, blank lines are ignored, unknown
keys are rejected.  Molecule constants have no physical defaults beyond
natural units (mu = hbar = k = 1): De, re, D, b and alpha must be given.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .model import MoleculeSpec

_REQUIRED = ("De", "re", "D", "b", "alpha")

_FLOAT_KEYS = {
    "mu": "mu",
    "hbar": "hbar",
    "De": "De",
    "re": "re",
    "D": "D",
    "b": "b",
    "alpha": "alpha",
    "k": "k_boltz",
    "beta_min": "beta_min",
    "beta_max": "beta_max",
    "lam_min": "lam_min",
    "lam_max": "lam_max",
}
_INT_KEYS = {"ell", "beta_steps", "lam_steps"}
_ENUM_KEYS = {"path": ("direct", "integral", "closed"), "norm": ("quadrature", "closed"), "format": ("csv", "json")}
_TEXT_KEYS = {"name", "output"}
_LIST_KEYS = {"states"}

KNOWN_KEYS = (
    set(_FLOAT_KEYS) | _INT_KEYS | set(_ENUM_KEYS) | _TEXT_KEYS | _LIST_KEYS
)


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with documented defaults."""

    molecule: MoleculeSpec
    ell: int = 0
    states: tuple[int, ...] = (0, 1, 2, 3)
    beta_min: float = 0.1
    beta_max: float = 2.0
    beta_steps: int = 50
    lam_min: float | None = None
    lam_max: float | None = None
    lam_steps: int = 1
    path: str = "direct"
    norm: str = "quadrature"
    output: str | None = None
    format: str = "csv"
    source_text: str = field(default="", repr=False, compare=False)

    def beta_values(self) -> list[float]:
        if self.beta_steps == 1:
            return [self.beta_min]
        step = (self.beta_max - self.beta_min) / (self.beta_steps - 1)
        return [self.beta_min + i * step for i in range(self.beta_steps)]

    def lam_values(self) -> list[float]:
        if self.lam_min is None or self.lam_max is None or self.lam_steps <= 1:
            return []
        step = (self.lam_max - self.lam_min) / (self.lam_steps - 1)
        return [self.lam_min + i * step for i in range(self.lam_steps)]


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration text.

    Raises ParseError (with line number) on malformed lines and
    ValidationError naming the offending or missing keys.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"expected 'key = value', got {stripped!r}", line=lineno)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ParseError("empty key", line=lineno)
        if key not in KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", line=lineno)
        if key in raw:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        raw[key] = value

    missing = [k for k in _REQUIRED if k not in raw]
    if missing:
        raise ValidationError(f"missing required molecule keys: {', '.join(missing)}")

    values: dict[str, object] = {}
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ValidationError(f"{key} must be a number, got {value!r}") from None
        elif key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ValidationError(f"{key} must be an integer, got {value!r}") from None
        elif key in _ENUM_KEYS:
            if value not in _ENUM_KEYS[key]:
                raise ValidationError(
                    f"{key} must be one of {', '.join(_ENUM_KEYS[key])}, got {value!r}"
                )
            values[key] = value
        elif key in _LIST_KEYS:
            try:
                values[key] = tuple(int(p.strip()) for p in value.split(",") if p.strip())
            except ValueError:
                raise ValidationError(
                    f"{key} must be a comma-separated integer list, got {value!r}"
                ) from None
        else:
            values[key] = value

    _check_positive(values, "alpha")
    _check_positive(values, "re")
    _check_positive(values, "mu")
    _check_positive(values, "hbar")
    _check_positive(values, "k")
    _check_nonneg(values, "De")
    _check_nonneg(values, "D")

    molecule = MoleculeSpec(
        name=str(values.get("name", "molecule")),
        mu=float(values.get("mu", 1.0)),
        hbar=float(values.get("hbar", 1.0)),
        De=float(values["De"]),
        re=float(values["re"]),
        D=float(values["D"]),
        b=float(values["b"]),
        alpha=float(values["alpha"]),
        k_boltz=float(values.get("k", 1.0)),
    )

    ell = int(values.get("ell", 0))
    if ell < 0:
        raise ValidationError("ell must be >= 0")
    states = tuple(values.get("states", (0, 1, 2, 3)))
    if not states:
        raise ValidationError("states must not be empty")
    if any(n < 0 for n in states):
        raise ValidationError("states must be >= 0")

    beta_min = float(values.get("beta_min", 0.1))
    beta_max = float(values.get("beta_max", 2.0))
    beta_steps = int(values.get("beta_steps", 50))
    if beta_min <= 0:
        raise ValidationError("beta_min must be > 0")
    if beta_steps < 1:
        raise ValidationError("beta_steps must be >= 1")
    if beta_steps > 1 and beta_max <= beta_min:
        raise ValidationError("beta_max must exceed beta_min")

    lam_min = values.get("lam_min")
    lam_max = values.get("lam_max")
    lam_steps = int(values.get("lam_steps", 1))
    if lam_steps < 1:
        raise ValidationError("lam_steps must be >= 1")
    if lam_min is not None and float(lam_min) <= 0:
        raise ValidationError("lam_min must be > 0")
    if lam_steps > 1:
        if lam_min is None or lam_max is None:
            raise ValidationError("lam sweeps need lam_min and lam_max")
        if float(lam_max) <= float(lam_min):
            raise ValidationError("lam_max must exceed lam_min")

    return RunConfig(
        molecule=molecule,
        ell=ell,
        states=states,
        beta_min=beta_min,
        beta_max=beta_max,
        beta_steps=beta_steps,
        lam_min=None if lam_min is None else float(lam_min),
        lam_max=None if lam_max is None else float(lam_max),
        lam_steps=lam_steps,
        path=str(values.get("path", "direct")),
        norm=str(values.get("norm", "quadrature")),
        output=values.get("output"),
        format=str(values.get("format", "csv")),
        source_text=text,
    )


def _check_positive(values: dict, key: str) -> None:
    if key in values and not float(values[key]) > 0:
        raise ValidationError(f"{key} must be > 0")


def _check_nonneg(values: dict, key: str) -> None:
    if key in values and float(values[key]) < 0:
        raise ValidationError(f"{key} must be >= 0")


def dump_config(cfg: RunConfig) -> str:
    """Canonical ``key = value`` rendering of a parsed configuration."""
    m = cfg.molecule
    lines = [
        f"name = {m.name}",
        f"mu = {m.mu!r}",
        f"hbar = {m.hbar!r}",
        f"De = {m.De!r}",
        f"re = {m.re!r}",
        f"D = {m.D!r}",
        f"b = {m.b!r}",
        f"alpha = {m.alpha!r}",
        f"k = {m.k_boltz!r}",
        f"ell = {cfg.ell}",
        f"states = {','.join(str(n) for n in cfg.states)}",
        f"beta_min = {cfg.beta_min!r}",
        f"beta_max = {cfg.beta_max!r}",
        f"beta_steps = {cfg.beta_steps}",
    ]
    if cfg.lam_min is not None:
        lines.append(f"lam_min = {cfg.lam_min!r}")
    if cfg.lam_max is not None:
        lines.append(f"lam_max = {cfg.lam_max!r}")
    lines.append(f"lam_steps = {cfg.lam_steps}")
    lines.append(f"path = {cfg.path}")
    lines.append(f"norm = {cfg.norm}")
    if cfg.output is not None:
        lines.append(f"output = {cfg.output}")
    lines.append(f"format = {cfg.format}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: RunConfig) -> str:
    """Stable hash of the canonical rendering (not the raw source text)."""
    return hashlib.sha256(dump_config(cfg).encode("utf-8")).hexdigest()[:16]
