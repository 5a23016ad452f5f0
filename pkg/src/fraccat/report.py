"""Structured text reports with a machine-readable summary block at the top."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Section:
    title: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    def add(self, line: str = "") -> "Section":
        self.lines.append(line)
        return self

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        """Record one verdict line; any failure fails the section."""
        self.passed = self.passed and bool(ok)
        tail = f" ({detail})" if detail else ""
        self.lines.append(f"[{'ok' if ok else 'FAIL'}] {label}{tail}")
        return bool(ok)

    def info(self, label: str, value) -> None:
        self.lines.append(f"{label}: {value}")

    def table(self, header: list[str], rows: list[list]) -> None:
        cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
        for r in cells:
            self.lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


@dataclass
class Report:
    command: str
    header: dict[str, object]
    sections: list[Section] = field(default_factory=list)

    def section(self, title: str) -> Section:
        s = Section(title)
        self.sections.append(s)
        return s

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    def summary(self) -> dict[str, object]:
        failed = [s.title for s in self.sections if not s.passed]
        return {
            "status": "PASS" if not failed else "FAIL",
            "sections": len(self.sections),
            "passed": len(self.sections) - len(failed),
            "failed": len(failed),
        }

    def render(self) -> str:
        out = ["# fraccat report", f"command: {self.command}"]
        out += [f"{k}: {v}" for k, v in self.header.items()]
        out.append("")
        out.append("[summary]")
        out += [f"{k}: {v}" for k, v in self.summary().items()]
        for s in self.sections:
            out.append(f"section: {'PASS' if s.passed else 'FAIL'} | {s.title}")
        out.append("[/summary]")
        for s in self.sections:
            out.append("")
            out.append(f"## {s.title}")
            out.append(f"result: {'PASS' if s.passed else 'FAIL'}")
            out += s.lines
        return "\n".join(out) + "\n"


def parse_summary(text: str) -> dict[str, str]:
    """Read the key/value pairs of the summary block back out of a rendered report."""
    out: dict[str, str] = {}
    inside = False
    for line in text.splitlines():
        if line == "[summary]":
            inside = True
        elif line == "[/summary]":
            break
        elif inside and ": " in line and not line.startswith("section:"):
            k, v = line.split(": ", 1)
            out[k] = v
    return out
