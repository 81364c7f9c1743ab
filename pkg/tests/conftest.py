import pytest

from overlap_shor.builder import build_shor

# Single-qubit rows of the [[9,1,3]] syndrome table, read row by row.
TABLE_I = {
    "X0": "00100000", "Y0": "11100000", "Z0": "11000000",
    "X1": "00110000", "Y1": "11110000", "Z1": "11000000",
    "X2": "00010000", "Y2": "11010000", "Z2": "11000000",
    "X3": "00001000", "Y3": "10001000", "Z3": "10000000",
    "X4": "00001100", "Y4": "10001100", "Z4": "10000000",
    "X5": "00000100", "Y5": "10000100", "Z5": "10000000",
    "X6": "00000010", "Y6": "01000010", "Z6": "01000000",
    "X7": "00000011", "Y7": "01000011", "Z7": "01000000",
    "X8": "00000001", "Y8": "01000001", "Z8": "01000000",
}

# Weight-two rows listed for the same code, written as printed (not canonical).
TABLE_II = {
    "X0Z3": "10100000", "Y0Z3": "01100000",
    "X1Z3": "10110000", "Y1Z3": "01110000",
    "X2Z3": "10010000", "Y2Z3": "01010000",
    "X6Z3": "10000010", "Y6Z3": "11000010",
    "X7Z3": "10000011", "Y7Z3": "11000011",
    "X8Z3": "10000001", "Y8Z3": "11000001",
}

SHOR3_GENERATORS = [
    "X0X1X2X3X4X5", "X0X1X2X6X7X8",
    "Z0Z1", "Z1Z2", "Z3Z4", "Z4Z5", "Z6Z7", "Z7Z8",
]


@pytest.fixture(scope="session")
def shor3():
    return build_shor(3)


@pytest.fixture(scope="session")
def shor5():
    return build_shor(5)


_ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    _ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
