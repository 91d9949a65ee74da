from datetime import datetime
from pathlib import Path
from typing import List

from src.realization import RealizationEntry
from src.run_config import resolve_path

# Columns of the campaign run log
RUN_LOG_COLUMNS = ["quiver", "root", "permutation", "method", "crossings", "nodes"]


class Logger:
    """
    Appends timestamped comma-separated rows to a file.
    """

    def __init__(self, path: str, col: List[str]) -> None:
        """
        Initializes a Logger object with the given parameters.

        Args:
            path: The path of the file where rows are appended (__rel__ prefix allowed).
            col: List of column names for the logged data.
        """
        if len(col) == 0:
            raise ValueError("Logger must have at least one column")
        self._path: str = resolve_path(path)
        Path(self._path).parent.mkdir(parents=True, exist_ok=True)
        self._col: List[str] = list(col)

        # Header is written unless the file already starts with it
        expected_header = "timestamp, " + ", ".join(self._col)
        try:
            with open(self._path, 'r') as file:
                first_line = file.readline().strip()
            if first_line != expected_header:
                with open(self._path, 'a') as file:
                    file.write(expected_header + "\n")
        except FileNotFoundError:
            with open(self._path, 'w') as file:
                file.write(expected_header + "\n")

    def __str__(self) -> str:
        return f"Logger(path = {self._path}, col = {self._col})"

    @property
    def path(self) -> str:
        return self._path

    @property
    def col(self) -> List[str]:
        return list(self._col)

    def log_data(self, data: List[str]) -> None:
        """
        Appends one row as "YYYY-MM-DDTHH:MM:SS.ssssss, data". Commas inside a field are
        replaced by spaces so every row keeps the header's column count.

        Args:
            data: One string per column.
        """
        if len(data) != len(self._col):
            raise ValueError(f"Number of data points: {len(data)} does not match number of columns: {len(self._col)}")
        timestamp = datetime.now().isoformat()
        fields = [str(d).replace(",", " ") for d in data]
        with open(self._path, 'a') as file:
            file.write(f"{timestamp}, {', '.join(fields)}\n")


class RunLog(Logger):
    """
    Campaign run log: one row per root attempt.
    """

    def __init__(self, path: str) -> None:
        super().__init__(path, RUN_LOG_COLUMNS)

    def log_entry(self, quiver_name: str, entry: RealizationEntry) -> None:
        self.log_data([
            quiver_name,
            " ".join(str(c) for c in entry.root),
            " ".join(str(v) for v in entry.permutation) if entry.permutation else "-",
            entry.method or "unrealized",
            str(entry.crossings),
            str(entry.nodes),
        ])
