import itertools

import numpy as np
import pytest

from quandle_hilbert.catalog import NAMES, builtin

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def catalog_quandles():
    return {name: builtin(name).quandle for name in NAMES}


def brute_is_quandle(table) -> bool:
    """Axioms checked with plain loops, independent of the package validator."""
    t = [list(r) for r in table]
    n = len(t)
    if any(t[x][x] != x for x in range(n)):
        return False
    if any(sorted(t[x]) != list(range(n)) for x in range(n)):
        return False
    return all(
        t[x][t[y][z]] == t[t[x][y]][t[x][z]] for x, y, z in itertools.product(range(n), repeat=3)
    )


def brute_closed_subsets(table) -> list[int]:
    """Every subset tested for closure, as bitmasks in ascending order."""
    n = len(table)
    out = []
    for mask in range(1 << n):
        members = [x for x in range(n) if mask >> x & 1]
        if all(mask >> int(table[x][y]) & 1 for x in members for y in members):
            out.append(mask)
    return out


def brute_orbit_count(table, n: int) -> int:
    """Orbits of the braid action explored tuple by tuple with both letter directions."""
    t = [list(r) for r in table]
    q = len(t)
    inv = [[0] * q for _ in range(q)]
    for x in range(q):
        for y in range(q):
            inv[x][t[x][y]] = y
    seen = set()
    count = 0
    for start in itertools.product(range(q), repeat=n):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            s = stack.pop()
            for i in range(n - 1):
                a, b = s[i], s[i + 1]
                for img in (s[:i] + (t[a][b], a) + s[i + 2:], s[:i] + (b, inv[b][a]) + s[i + 2:]):
                    if img not in seen:
                        seen.add(img)
                        stack.append(img)
    return count


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_word(rng: np.random.Generator, strands: int, length: int) -> tuple[int, ...]:
    if strands < 2:
        return ()
    k = rng.integers(1, strands, size=length)
    sign = rng.choice([-1, 1], size=length)
    return tuple(int(a * b) for a, b in zip(k, sign))
