"""Line-oriented configuration for verification runs.

Grammar::

    file   := line*
    line   := ws [key ws "=" ws value] ws ["#" comment] NEWLINE
    key    := one of KEYS below

Values:

    chart_dim, courant_k, seed, samples, max_poly_degree, atiyah_rank : integer
    family              : standard | twisted | quadratic | commutative
    twist_potential     : a form literal of degree courant_k + 1, or "random"
    lie_algebra         : so3 | custom
    structure_constants : "i j k c" entries separated by ";", meaning
                          [e_i, e_j] = c e_k (and [e_j, e_i] = -c e_k)
    gram                : matrix rows separated by ";", entries by spaces
    suites              : suite names separated by "," (or "all")

Form literals follow ``tauq.textfmt``.  The quadratic family lives on a
point, so ``chart_dim`` is ignored for it.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .courant import (
    COMMUTATIVE,
    FAMILIES,
    QUADRATIC,
    STANDARD,
    TWISTED,
    CourantError,
    CourantStructure,
    commutative,
    quadratic,
    standard,
    twisted,
)
from .liealgebroid import SO3_CONSTANTS, SO3_KILLING
from .sampling import derived_rng, sample_form
from .symcore import Form, de_rham
from .textfmt import ParseError, format_form, parse_form


class ConfigError(ValueError):
    """Invalid configuration; ``line`` and ``column`` are 1-based (0 when not tied to a position)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column


@dataclass
class SuiteConfig:
    chart_dim: int = 2
    courant_k: int = 1
    family: str = STANDARD
    twist_potential: str = "random"
    lie_algebra: str = "so3"
    structure_constants: Optional[str] = None
    gram: Optional[str] = None
    seed: int = 0
    samples: Optional[int] = None
    max_poly_degree: int = 2
    atiyah_rank: int = 2
    suites: List[str] = field(default_factory=list)
    # source positions of each key, for validation errors
    positions: Dict[str, Tuple[int, int]] = field(default_factory=dict, repr=False, compare=False)

    def echo(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "chart_dim": self.chart_dim,
            "courant_k": self.courant_k,
            "family": self.family,
            "seed": self.seed,
            "samples": self.samples,
            "max_poly_degree": self.max_poly_degree,
            "atiyah_rank": self.atiyah_rank,
            "suites": list(self.suites),
        }
        if self.family == TWISTED:
            out["twist_potential"] = self.twist_potential
        if self.family == QUADRATIC:
            out["lie_algebra"] = self.lie_algebra
            if self.structure_constants is not None:
                out["structure_constants"] = self.structure_constants
            if self.gram is not None:
                out["gram"] = self.gram
        return out


INT_KEYS = ("chart_dim", "courant_k", "seed", "samples", "max_poly_degree", "atiyah_rank")
STR_KEYS = ("family", "twist_potential", "lie_algebra", "structure_constants", "gram", "suites")
KEYS = INT_KEYS + STR_KEYS


def parse_config(text: str) -> SuiteConfig:
    cfg = SuiteConfig()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ConfigError("expected 'key = value'", lineno, col)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        value = value_part.strip()
        value_col = len(key_part) + 2 + len(value_part) - len(value_part.lstrip())
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno, key_col)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}", lineno, key_col)
        seen.add(key)
        if not value:
            raise ConfigError(f"missing value for {key!r}", lineno, value_col)
        cfg.positions[key] = (lineno, value_col)
        if key in INT_KEYS:
            try:
                setattr(cfg, key, int(value))
            except ValueError:
                raise ConfigError(f"{key} expects an integer, found {value!r}", lineno, value_col) from None
        elif key == "suites":
            cfg.suites = [s.strip() for s in value.split(",") if s.strip()]
        else:
            setattr(cfg, key, value)
    validate(cfg)
    return cfg


def _err(cfg: SuiteConfig, key: str, message: str, offset: int = 0) -> ConfigError:
    line, col = cfg.positions.get(key, (0, 0))
    return ConfigError(message, line, col + offset if line else 0)


def validate(cfg: SuiteConfig) -> None:
    if cfg.family not in FAMILIES:
        raise _err(cfg, "family", f"unknown family {cfg.family!r}; expected one of {', '.join(FAMILIES)}")
    if cfg.family != QUADRATIC and cfg.chart_dim < 1:
        raise _err(cfg, "chart_dim", "chart_dim must be at least 1")
    if cfg.chart_dim > 6:
        raise _err(cfg, "chart_dim", "chart_dim above 6 is not supported")
    if cfg.courant_k < 1:
        raise _err(cfg, "courant_k", "courant_k must be at least 1")
    if cfg.samples is not None and cfg.samples < 1:
        raise _err(cfg, "samples", "samples must be at least 1")
    if cfg.max_poly_degree < 0:
        raise _err(cfg, "max_poly_degree", "max_poly_degree must be non-negative")
    if not 1 <= cfg.atiyah_rank <= 3:
        raise _err(cfg, "atiyah_rank", "atiyah_rank must be between 1 and 3")
    if cfg.seed < 0 or cfg.seed >= 2**64:
        raise _err(cfg, "seed", "seed must be a 64-bit unsigned integer")
    from .verify import SUITES  # suite names live with the registry

    for name in cfg.suites:
        if name != "all" and name not in SUITES:
            raise _err(cfg, "suites", f"unknown suite {name!r}")
    # building the structure surfaces family-parameter errors with positions
    build_structure(cfg)


def _parse_twist(cfg: SuiteConfig) -> Form:
    n, k = cfg.chart_dim, cfg.courant_k
    if cfg.twist_potential.strip() == "random":
        rng = derived_rng(cfg.seed, "twist-potential")
        B = Form.zero(n)
        for _ in range(20):
            B = sample_form(n, k + 1, rng, max(cfg.max_poly_degree, 1))
            if de_rham(B):
                break
        return B
    try:
        B = parse_form(cfg.twist_potential, n)
    except ParseError as e:
        raise _err(cfg, "twist_potential", e.message, e.column - 1) from None
    if not B.is_zero() and B.degrees() != (k + 1,):
        raise _err(cfg, "twist_potential", f"twist potential must be a {k + 1}-form, found degrees {list(B.degrees())}")
    return B


def twist_potential_form(cfg: SuiteConfig) -> Form:
    return _parse_twist(cfg)


def _parse_rationals(text: str, key: str, cfg: SuiteConfig) -> List[List[Fraction]]:
    rows = []
    offset = 0
    for chunk in text.split(";"):
        row = []
        pos = offset
        for tok in chunk.replace(",", " ").split():
            col = chunk.find(tok, pos - offset) + offset
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise _err(cfg, key, f"expected a rational number, found {tok!r}", col) from None
            pos = col + len(tok)
        if row:
            rows.append(row)
        offset += len(chunk) + 1
    return rows


def _lie_data(cfg: SuiteConfig):
    if cfg.structure_constants is None:
        if cfg.lie_algebra != "so3":
            raise _err(cfg, "lie_algebra", "a custom Lie algebra needs structure_constants")
        consts = SO3_CONSTANTS
        gram = SO3_KILLING
    else:
        entries = _parse_rationals(cfg.structure_constants, "structure_constants", cfg)
        for e in entries:
            if len(e) != 4 or any(x.denominator != 1 or x < 0 for x in e[:3]):
                raise _err(cfg, "structure_constants", "each entry must be 'i j k c' with non-negative integer indices")
        rank = 1 + max((int(x) for e in entries for x in e[:3]), default=-1)
        if cfg.gram is not None:
            rank = max(rank, len(_parse_rationals(cfg.gram, "gram", cfg)))
        consts = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
        for i, j, k, c in entries:
            i, j, k = int(i), int(j), int(k)
            if i == j:
                raise _err(cfg, "structure_constants", f"[e_{i}, e_{i}] must vanish")
            consts[i][j][k] += c
            consts[j][i][k] -= c
        gram = None
    if cfg.gram is not None:
        gram = _parse_rationals(cfg.gram, "gram", cfg)
        r = len(consts)
        if len(gram) != r or any(len(row) != r for row in gram):
            raise _err(cfg, "gram", f"gram must be a {r}x{r} matrix")
    if gram is None:
        raise _err(cfg, "structure_constants", "a custom Lie algebra needs a gram matrix")
    return consts, gram


def build_structure(cfg: SuiteConfig) -> CourantStructure:
    n, k = cfg.chart_dim, cfg.courant_k
    try:
        if cfg.family == STANDARD:
            return standard(n, k)
        if cfg.family == TWISTED:
            return twisted(n, k, _parse_twist(cfg))
        if cfg.family == COMMUTATIVE:
            return commutative(n, k)
        consts, gram = _lie_data(cfg)
        if k != 1:
            raise _err(cfg, "courant_k", "the quadratic family has dimension 1 (pairing in functions on a point)")
        return quadratic(consts, gram)
    except CourantError as e:
        key = {"twisted": "twist_potential", "quadratic": "gram"}.get(cfg.family, "family")
        raise _err(cfg, key, str(e)) from None


def describe_twist(cfg: SuiteConfig) -> Optional[str]:
    if cfg.family != TWISTED:
        return None
    return format_form(_parse_twist(cfg))


def with_overrides(cfg: SuiteConfig, **kw) -> SuiteConfig:
    out = replace(cfg, **{k: v for k, v in kw.items() if v is not None})
    validate(out)
    return out
