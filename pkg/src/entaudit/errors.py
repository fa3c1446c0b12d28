from __future__ import annotations

from pathlib import Path


class FormatError(ValueError):
    """Malformed input file; ``lineno`` 0 means the file as a whole."""

    def __init__(self, path: str | Path, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        self.message = message
        where = f"{self.path}:{lineno}" if lineno else self.path
        super().__init__(f"{where}: {message}")


class CapacityError(RuntimeError):
    """A protocol step exceeded a party's register budget."""

    def __init__(self, step_index: int, party: str, message: str):
        self.step_index = step_index
        self.party = party
        super().__init__(f"step {step_index}: party {party}: {message}")


class ProtocolError(RuntimeError):
    """A protocol step is not executable (missing qubit, occupied slot, cross-party gate)."""

    def __init__(self, step_index: int, message: str):
        self.step_index = step_index
        super().__init__(f"step {step_index}: {message}")
