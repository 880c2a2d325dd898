import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spin1bell.eigensolver import ground_state
from spin1bell.hamiltonian import HamiltonianParams, build_hamiltonian
from spin1bell.hilbert import enumerate_sector


@pytest.fixture(scope="session")
def solve():
    cache = {}

    def _solve(N, Jz, D):
        key = (N, Jz, D)
        if key not in cache:
            basis = enumerate_sector(N, 0)
            cache[key] = ground_state(build_hamiltonian(HamiltonianParams(Jz, D, N), basis))
        return cache[key]

    return _solve


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: s[6:]):
        terminalreporter.write_line(line)
