import functools
import http.server
import math
import threading
from pathlib import Path

import numpy as np
import pytest

from zetacycle.term_engine import sum_series
from zetacycle.zero_catalog import load_zero_file

ROOT = Path(__file__).resolve().parent.parent
ZERO_TABLE = ROOT / "data" / "zeros_100k.txt"

# criterion id -> (passed, detail), filled by test_acceptance
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def zero_table_path():
    if not ZERO_TABLE.exists():
        pytest.fail(f"{ZERO_TABLE} missing; regenerate with scripts/make_zero_table.py")
    return ZERO_TABLE


@pytest.fixture(scope="session")
def catalog_100k(zero_table_path):
    return load_zero_file(zero_table_path)


@pytest.fixture(scope="session")
def catalog_30k(catalog_100k):
    return catalog_100k.head(30_000)


@pytest.fixture(scope="session")
def catalog_4k(catalog_100k):
    return catalog_100k.head(4_000)


@pytest.fixture(scope="session")
def series_cache(catalog_100k):
    cache = {}

    def get(n, count):
        key = (n, count)
        if key not in cache:
            cache[key] = sum_series(catalog_100k.head(count), n)
        return cache[key]

    return get


@pytest.fixture
def http_root(tmp_path):
    """Serve ``tmp_path/www`` on localhost; yields (directory, base_url, hits)."""
    root = tmp_path / "www"
    root.mkdir()
    hits = []

    class Handler(http.server.SimpleHTTPRequestHandler):
        def log_message(self, *args):
            pass

        def do_GET(self):
            hits.append(self.path)
            super().do_GET()

    server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), functools.partial(Handler, directory=str(root)))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield root, f"http://127.0.0.1:{server.server_address[1]}", hits
    finally:
        server.shutdown()
        server.server_close()


def overlap_grid(count=1000):
    """Deterministic points with 0.1 <= |z| <= 1e4 and 0 < arg z < pi.

    The argument follows a golden-ratio sequence; points whose Re z would
    overflow Ei in float64 are rotated towards the imaginary axis so that
    Re z <= 700.
    """
    r = np.logspace(-1, 4, count)
    phi = (np.arange(count) * ((math.sqrt(5) - 1) / 2)) % 1.0
    arg = math.pi * (0.002 + 0.996 * phi)
    floor = np.arccos(np.clip(700 / r, -1, 1)) + 1e-3
    arg = np.maximum(arg, floor)
    return [complex(z) for z in r * np.exp(1j * arg)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
