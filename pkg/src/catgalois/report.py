"""Suite reports: counted checks plus violations with replayable witnesses."""

import json
from collections import Counter
from dataclasses import dataclass, field


@dataclass
class SuiteReport:
    suite: str
    checked: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def check(self, name, passed, witness=None):
        self.checked[name] += 1
        if not passed:
            w = {"check": name}
            w.update(witness or {})
            self.violations.append(w)
        return passed

    def merge(self, other):
        self.checked.update(other.checked)
        self.violations.extend(other.violations)
        for k, v in other.info.items():
            if isinstance(v, list):
                self.info.setdefault(k, []).extend(v)
            else:
                self.info.setdefault(k, v)
        return self

    def to_dict(self):
        key = lambda v: json.dumps(v, sort_keys=True)  # noqa: E731
        info = {k: sorted(v, key=key) if isinstance(v, list) else v
                for k, v in sorted(self.info.items())}
        return {"suite": self.suite, "ok": self.ok,
                "checked": dict(sorted(self.checked.items())),
                "violations": sorted(self.violations, key=key), "info": info}

    def summary(self):
        total = sum(self.checked.values())
        return (f"{self.suite}: {total} checks, {len(self.violations)} violations"
                + ("" if self.ok else f" (first: {self.to_dict()['violations'][0]})"))
