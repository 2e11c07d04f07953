"""Injectable clock so pipeline artifacts can be byte-reproducible."""

from __future__ import annotations

from datetime import datetime, timezone


class SystemClock:
    def now(self) -> datetime:
        return datetime.now(timezone.utc)


class FixedClock:
    """Returns a fixed instant, advancing by one second per call so ordered
    events stay ordered."""

    def __init__(self, start: str | datetime, step_seconds: int = 1) -> None:
        if isinstance(start, str):
            start = datetime.fromisoformat(start.replace("Z", "+00:00"))
        if start.tzinfo is None:
            start = start.replace(tzinfo=timezone.utc)
        self._current = start
        self._step = step_seconds

    def now(self) -> datetime:
        from datetime import timedelta

        current = self._current
        self._current = current + timedelta(seconds=self._step)
        return current


def isoformat(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")
