"""Tracked K-class symbols and where they live.

A ledger maps generator symbols such as "[1]", "[a]", "[b]" to concrete
elements of computed K-groups, with order annotations. Locations name the
group an entry lives in; "unitary" marks the class of the implementing
unitary before a solve has placed it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

LOCATIONS = ("k0", "k1", "crossed0", "crossed1", "unitary")


@dataclass(frozen=True)
class KClass:
    location: str
    vector: tuple[int, ...] | None
    order: int | float | None  # math.inf for free classes, None when undetermined
    note: str = ""

    def __post_init__(self):
        if self.location not in LOCATIONS:
            raise ValueError(f"unknown ledger location {self.location!r}")
        if self.vector is not None:
            object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))


class KClassLedger:
    """An immutable symbol table; updates return a new ledger."""

    def __init__(self, entries: dict[str, KClass] | None = None):
        self._entries: dict[str, KClass] = dict(entries or {})

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._entries

    def __getitem__(self, symbol: str) -> KClass:
        return self._entries[symbol]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, KClassLedger) and self._entries == other._entries

    def items(self):
        return self._entries.items()

    def symbols(self) -> list[str]:
        return sorted(self._entries)

    def with_entry(self, symbol: str, entry: KClass) -> "KClassLedger":
        new = dict(self._entries)
        new[symbol] = entry
        return KClassLedger(new)

    def get(self, symbol: str, default: KClass | None = None) -> KClass | None:
        return self._entries.get(symbol, default)


def order_to_json(order: int | float | None):
    if order is None:
        return None
    if order == math.inf:
        return "inf"
    return int(order)


def order_from_json(data) -> int | float | None:
    if data is None:
        return None
    if data == "inf":
        return math.inf
    return int(data)


def ledger_to_json(ledger: KClassLedger) -> dict:
    out = {}
    for symbol, entry in sorted(ledger.items()):
        out[symbol] = {
            "group": entry.location,
            "coeffs": list(entry.vector) if entry.vector is not None else None,
            "order": order_to_json(entry.order),
            "note": entry.note,
        }
    return out


def ledger_from_json(data: dict) -> KClassLedger:
    entries = {}
    for symbol, raw in data.items():
        vector = raw.get("coeffs")
        entries[symbol] = KClass(
            raw["group"],
            tuple(vector) if vector is not None else None,
            order_from_json(raw.get("order")),
            raw.get("note", ""),
        )
    return KClassLedger(entries)
