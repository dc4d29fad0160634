"""Pass/fail reports shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class CheckReport:
    title: str
    items: list[CheckItem] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.items.append(CheckItem(label, bool(ok), detail))

    def extend(self, other: "CheckReport") -> None:
        self.items.extend(other.items)
        for k, v in other.stats.items():
            self.stats[k] = max(self.stats.get(k, 0), v)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    @property
    def passed(self) -> int:
        return sum(i.ok for i in self.items)

    @property
    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.ok]

    def __len__(self) -> int:
        return len(self.items)

    def summary(self) -> str:
        return f"{self.title}: {self.passed}/{len(self.items)} passed"
