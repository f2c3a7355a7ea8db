"""Run configuration: YAML loading, defaults, validation and logging setup."""

import copy
import math
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import yaml

from .errors import ConfigError
from .parallel import resolve_threads

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/config.yaml"

DEFAULTS = {
    "paths": {
        "results": "results",
        "logs": "logs",
    },
    "logging": {
        "level": "INFO",
        "max_bytes": 10485760,
        "backup_count": 5,
    },
    "tolerances": {
        "residual": 1e-10,
        "certification": 1e-8,
        "dedup_angle": 1e-6,
        "merge_roots": 1e-7,
    },
    "solver": {
        "maxit": 500,
        "starts": None,
    },
    "census": {
        "trials": 100,
        "grid": 4096,
    },
    "parallel": {
        "threads": 1,
    },
    "seed": 0,
}


def _merge(base: dict, override: dict) -> dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> dict:
    """Load configuration from YAML and merge it over DEFAULTS.

    A missing file is not an error: the defaults apply.

    Args:
        config_path: Path to the configuration file.

    Returns:
        Configuration dictionary.

    Raises:
        ConfigError: If the file is not valid YAML or not a mapping.
    """
    path = Path(config_path or DEFAULT_CONFIG_PATH)
    if not path.exists():
        if config_path:
            logger.warning(f"Config file not found: {path}, using defaults")
        return copy.deepcopy(DEFAULTS)

    try:
        with open(path) as f:
            loaded = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed YAML in {path}: {e}", field="config") from e

    if loaded is None:
        loaded = {}
    if not isinstance(loaded, dict):
        raise ConfigError(f"{path} must contain a mapping", field="config")
    return _merge(DEFAULTS, loaded)


TOLERANCE_FIELDS = ("residual_tol", "cert_tol", "dedup_angle", "merge_roots")


def _as_tolerance(value, name: str):
    """Coerce YAML strings such as "1e-10" to float."""
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"must be a number, got {value!r}", field=name) from None
    return value


@dataclass
class RunConfig:
    """Resolved configuration of one CLI run, echoed into its report.

    Attributes:
        command: Command name, e.g. "solve z".
        inputs: Input file paths.
        output: Report path, if any.
        seed: Base seed for every random draw.
        residual_tol: Eigenvector acceptance residual.
        cert_tol: Relative nondegeneracy threshold.
        dedup_angle: Multistart deduplication distance.
        merge_roots: Characteristic-root merge tolerance.
        maxit: Iteration cap for iterative solvers.
        starts: Multistart count; None means 50·k·n.
        trials: Census trials.
        grid: Sweep grid size.
        threads: Worker threads.
    """

    command: str
    inputs: tuple = ()
    output: Optional[str] = None
    seed: int = 0
    residual_tol: float = 1e-10
    cert_tol: float = 1e-8
    dedup_angle: float = 1e-6
    merge_roots: float = 1e-7
    maxit: int = 500
    starts: Optional[int] = None
    trials: int = 100
    grid: int = 4096
    threads: int = 1

    @classmethod
    def from_config(cls, command: str, config: dict, **overrides) -> "RunConfig":
        """Build a RunConfig from a loaded config; non-None overrides win."""
        tolerances = config.get("tolerances", {})
        solver = config.get("solver", {})
        census = config.get("census", {})
        values = {
            "command": command,
            "seed": config.get("seed", 0),
            "residual_tol": tolerances.get("residual", 1e-10),
            "cert_tol": tolerances.get("certification", 1e-8),
            "dedup_angle": tolerances.get("dedup_angle", 1e-6),
            "merge_roots": tolerances.get("merge_roots", 1e-7),
            "maxit": solver.get("maxit", 500),
            "starts": solver.get("starts"),
            "trials": census.get("trials", 100),
            "grid": census.get("grid", 4096),
            "threads": config.get("parallel", {}).get("threads", 1),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        for name in TOLERANCE_FIELDS:
            values[name] = _as_tolerance(values[name], name)
        values["threads"] = resolve_threads(values["threads"])
        if "inputs" in values:
            values["inputs"] = tuple(str(p) for p in values["inputs"])
        run = cls(**values)
        run.validate()
        return run

    def validate(self) -> None:
        """Reject non-positive tolerances and limits.

        Raises:
            ConfigError: Naming the first offending field.
        """
        for name in TOLERANCE_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not 0 < value < math.inf:
                raise ConfigError(f"must be a positive finite number, got {value!r}", field=name)
        for name in ("maxit", "trials", "grid", "threads"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"must be a positive integer, got {value!r}", field=name)
        if self.starts is not None and (not isinstance(self.starts, int) or self.starts < 1):
            raise ConfigError(f"must be a positive integer, got {self.starts!r}", field="starts")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"must be a 64-bit non-negative integer, got {self.seed!r}", field="seed")

    def to_dict(self) -> dict:
        data = asdict(self)
        data["inputs"] = list(self.inputs)
        return data


LOG_HANDLER_NAMES = ("tndg-file", "tndg-console")


def setup_logging(config: dict, command: Optional[str] = None) -> None:
    """Install the run log handlers on the root logger.

    Handlers installed by an earlier call are replaced, so repeated runs in
    one process log each record once.

    Args:
        config: Configuration dictionary with paths.logs and logging settings.
        command: Command name stamped on every file record.
    """
    from logging.handlers import RotatingFileHandler

    log_dir = Path(config.get("paths", {}).get("logs", "logs"))
    log_dir.mkdir(parents=True, exist_ok=True)

    log_config = config.get("logging", {})
    level = getattr(logging, str(log_config.get("level", "INFO")).upper(), logging.INFO)

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        if handler.get_name() in LOG_HANDLER_NAMES:
            root_logger.removeHandler(handler)
            handler.close()

    file_handler = RotatingFileHandler(
        log_dir / "tndg.log",
        maxBytes=log_config.get("max_bytes", 10485760),
        backupCount=log_config.get("backup_count", 5),
    )
    file_handler.set_name(LOG_HANDLER_NAMES[0])
    file_handler.setFormatter(
        logging.Formatter(f"%(asctime)s [{command or 'tndg'}] %(levelname)s %(name)s: %(message)s")
    )

    console_handler = logging.StreamHandler()
    console_handler.set_name(LOG_HANDLER_NAMES[1])
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))

    root_logger.setLevel(level)
    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)
