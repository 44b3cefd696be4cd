"""Pass/fail reports shared by every verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    anchor: str
    status: str = "pass"
    witness: object = None
    count: int = 0

    @property
    def passed(self):
        return self.status == "pass"

    def as_dict(self):
        d = {"name": self.name, "anchor": self.anchor, "status": self.status, "count": self.count}
        if self.status == "fail":
            d["witness"] = _jsonable(self.witness)
        return d


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, name, anchor) -> Check:
        """Open (or reopen) a named check; it passes until a failure is recorded."""
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name, anchor)
        self.checks.append(c)
        return c

    def record(self, name, anchor, ok, witness=None):
        c = self.check(name, anchor)
        c.count += 1
        if not ok and c.status == "pass":
            c.status = "fail"
            c.witness = witness
        return ok

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.anchor, c.status, c.witness, c.count))
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def as_dict(self):
        return {
            "command": self.command,
            "verdict": self.verdict,
            "checks": [c.as_dict() for c in self.checks],
            **({"data": _jsonable(self.data)} if self.data else {}),
        }

    def to_json_lines(self):
        lines = [json.dumps({"command": self.command, "verdict": self.verdict})]
        lines += [json.dumps(c.as_dict()) for c in self.checks]
        if self.data:
            lines.append(json.dumps({"data": _jsonable(self.data)}))
        return "\n".join(lines)

    def to_text(self):
        out = [f"{self.command}: {self.verdict.upper()}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.name} ({c.anchor}; {c.count} cases)"
            if not c.passed:
                line += f" witness={_jsonable(c.witness)}"
            out.append(line)
        for k, v in self.data.items():
            out.append(f"  {k}: {_jsonable(v)}")
        return "\n".join(out)


def _jsonable(x):
    from .rings import RingElement

    if isinstance(x, RingElement):
        return [[list(r) for r in m] for m in x.entries]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)
