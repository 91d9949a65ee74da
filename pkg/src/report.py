import json
import os
from typing import Dict, List, Optional, Sequence

from src.realization import RealizationEntry
from src.root_system import format_root, root_sort_key


class RealizationReport:
    """
    Per-root realization record of one campaign, with a deterministic text form and a json
    summary.

    The text form never contains timings, so identical runs give identical files; timings only
    go to the summary's `timing` block.
    """

    def __init__(self, name: str, dynkin_type: str, mode: str, entries: Sequence[RealizationEntry],
                 header: Optional[Dict[str, str]] = None, display_labels: Optional[Dict[int, int]] = None) -> None:
        """
        Initializes a RealizationReport.

        Args:
            name: Quiver or family name.
            dynkin_type: Classification string.
            mode: Campaign mode ("nd", "strict", "affine", "e8").
            entries: One entry per root, in any order.
            header: Extra `key: value` lines written at the top (run configuration).
            display_labels: Map from quiver labels to standard labels, used for the two-row
                root pictures of D and E types.
        """
        self.name: str = name
        self.dynkin_type: str = dynkin_type
        self.mode: str = mode
        self.entries: List[RealizationEntry] = sorted(entries, key=lambda e: root_sort_key(e.root))
        self.header: Dict[str, str] = dict(header or {})
        self.display_labels: Optional[Dict[int, int]] = display_labels
        self.notes: List[str] = []
        self.extra: Dict = {}
        self.timing: Dict[str, float] = {}
        self.failures: List[str] = []

    def __str__(self) -> str:
        return f"RealizationReport(name = {self.name}, roots = {self.total}, realized = {self.realized})"

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def realized(self) -> int:
        return sum(1 for e in self.entries if e.realized)

    @property
    def unrealized(self) -> List[RealizationEntry]:
        return [e for e in self.entries if not e.realized]

    @property
    def complete(self) -> bool:
        return self.realized == self.total

    @property
    def passed(self) -> bool:
        """
        Every root realized and no side check (any-permutation, coverage, cross-check) failed.
        """
        return self.complete and not self.failures

    def methods(self) -> Dict[str, int]:
        """
        Number of realized roots per strategy, sorted by strategy name.
        """
        counts: Dict[str, int] = {}
        for e in self.entries:
            if e.realized:
                counts[e.method] = counts.get(e.method, 0) + 1
        return dict(sorted(counts.items()))

    def display(self, root: Sequence[int]) -> str:
        """
        Root in the standard picture when the type has one, else plain coefficients.
        """
        return display_root(root, self.dynkin_type, self.display_labels)

    def to_text(self) -> str:
        lines = [
            "# realization report",
            f"name: {self.name}",
            f"type: {self.dynkin_type}",
            f"mode: {self.mode}",
        ]
        lines += [f"{k}: {v}" for k, v in self.header.items()]
        lines += [
            f"roots: {self.total}",
            f"realized: {self.realized}",
            f"unrealized: {self.total - self.realized}",
        ]
        lines += [f"note: {note}" for note in self.notes]
        lines += [f"failure: {failure}" for failure in self.failures]
        lines.append("---")
        for e in self.entries:
            if e.realized:
                lines.append(
                    f"root {' '.join(str(c) for c in e.root)} [{self.display(e.root)}] | "
                    f"pi {' '.join(str(v) for v in e.permutation)} | method {e.method} | "
                    f"crossings {e.crossings} | word {e.word} | "
                    f"diagram {e.diagram.to_text().replace(chr(10), '; ').rstrip('; ')}"
                )
            else:
                lines.append(f"root {' '.join(str(c) for c in e.root)} [{self.display(e.root)}] | UNREALIZED | nodes {e.nodes}")
                lines += [f"  trace: {t}" for t in e.trace]
        return "\n".join(lines) + "\n"

    def summary(self) -> Dict:
        """
        Machine-readable summary: counts, strategy histogram, largest crossing count, run
        parameters and timings.
        """
        realized = [e for e in self.entries if e.realized]
        out = {
            "name": self.name,
            "type": self.dynkin_type,
            "mode": self.mode,
            "roots_total": self.total,
            "realized": self.realized,
            "unrealized": self.total - self.realized,
            "failures": len(self.failures),
            "methods": self.methods(),
            "max_crossings": max((e.crossings for e in realized), default=0),
            "seed": self.header.get("seed"),
            "budget": self.header.get("budget"),
            "timing": dict(self.timing),
        }
        out.update(self.extra)
        return out

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"

    def write(self, out_dir: str, stem: str) -> List[str]:
        """
        Writes <stem>.txt and <stem>.json into a directory and returns both paths.
        """
        os.makedirs(out_dir, exist_ok=True)
        text_path = os.path.join(out_dir, f"{stem}.txt")
        json_path = os.path.join(out_dir, f"{stem}.json")
        with open(text_path, "w", encoding="utf-8") as f:
            f.write(self.to_text())
        with open(json_path, "w", encoding="utf-8") as f:
            f.write(self.summary_json())
        return [text_path, json_path]


def display_root(root: Sequence[int], dynkin_type: str, labels: Optional[Dict[int, int]] = None) -> str:
    """
    Root as printed in reports: the two-row picture in standard labels when a relabelling is
    given, else plain coefficients.
    """
    if labels is None:
        return " ".join(str(c) for c in root)
    standard = [0] * len(root)
    for old, new in labels.items():
        standard[new - 1] = root[old - 1]
    return format_root(standard, dynkin_type)
