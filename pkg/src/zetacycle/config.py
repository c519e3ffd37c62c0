"""Run configuration.

The config file is INI style (``key = value`` lines under ``[section]``
headers)::

    [data]
    dir = data                     # ZETACYCLE_DATA_DIR overrides this
    figure_table = zeros_100k      # table used by `zetacycle figure`

    [sources]                      # label = URL; doubles as the fetch allow-list
    zeros1 = https://www-users.cse.umn.edu/~odlyzko/zeta_tables/zeros1

    [tolerances]
    validate = 2.0

    [run]
    checkpoint_stride = 1000

Relative ``dir`` values resolve against the config file's directory.
"""

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

ENV_DATA_DIR = "ZETACYCLE_DATA_DIR"
DEFAULT_SOURCES = {
    "zeros1": "https://www-users.cse.umn.edu/~odlyzko/zeta_tables/zeros1",
}
DEFAULT_TOLERANCES = {"validate": 2.0}


@dataclass
class RunConfig:
    data_dir: Path
    zero_sources: dict = field(default_factory=lambda: dict(DEFAULT_SOURCES))
    default_tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    checkpoint_stride: int = 1000
    figure_table: str = "zeros_100k"

    def table_path(self, label):
        return self.data_dir / f"{label}.txt"

    @property
    def allowed_urls(self):
        return list(self.zero_sources.values())


def load_config(path=None, environ=None):
    """Read ``path`` (or defaults only) and apply ``ZETACYCLE_DATA_DIR``.

    The data directory is created if missing and must be writable.
    """
    environ = os.environ if environ is None else environ
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    base = Path.cwd()
    if path is not None:
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from exc
        base = path.resolve().parent

    data_dir = Path(parser.get("data", "dir", fallback="data"))
    if not data_dir.is_absolute():
        data_dir = base / data_dir
    if environ.get(ENV_DATA_DIR):
        data_dir = Path(environ[ENV_DATA_DIR])

    sources = dict(DEFAULT_SOURCES)
    if parser.has_section("sources"):
        sources.update(parser.items("sources"))

    tolerances = dict(DEFAULT_TOLERANCES)
    if parser.has_section("tolerances"):
        for key, value in parser.items("tolerances"):
            try:
                tolerances[key] = float(value)
            except ValueError:
                raise ConfigError(f"tolerance {key!r} is not a number: {value!r}") from None

    try:
        stride = parser.getint("run", "checkpoint_stride", fallback=1000)
    except ValueError as exc:
        raise ConfigError(f"checkpoint_stride: {exc}") from None
    if stride < 1:
        raise ConfigError("checkpoint_stride must be >= 1")

    try:
        data_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create data dir {data_dir}: {exc}") from exc
    if not os.access(data_dir, os.W_OK):
        raise ConfigError(f"data dir {data_dir} is not writable")

    return RunConfig(
        data_dir=data_dir,
        zero_sources=sources,
        default_tolerances=tolerances,
        checkpoint_stride=stride,
        figure_table=parser.get("data", "figure_table", fallback="zeros_100k"),
    )
