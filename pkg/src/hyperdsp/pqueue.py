"""Addressable min-priority queue.

Items are hashable keys (vertex or hyperedge ids); each has at most one live
priority.  The heap itself is a plain :mod:`heapq` list and superseded
entries are skipped lazily, which keeps every operation in C-speed heap
primitives while offering the Enqueue / Update / Dequeue / Peek protocol.
Equal priorities are served in increasing item order.
"""

from __future__ import annotations

import heapq
from typing import Generic, Hashable, Iterator, Optional, TypeVar

K = TypeVar("K", bound=Hashable)


class AddressableHeap(Generic[K]):
    __slots__ = ("_heap", "_prio")

    def __init__(self):
        self._heap: list = []
        self._prio: dict = {}

    def __len__(self) -> int:
        return len(self._prio)

    def __bool__(self) -> bool:
        return bool(self._prio)

    def __contains__(self, item) -> bool:
        return item in self._prio

    def __iter__(self) -> Iterator[K]:
        return iter(self._prio)

    def priority(self, item: K):
        return self._prio[item]

    def push(self, item: K, prio) -> None:
        """Enqueue ``item`` or move it to ``prio`` if already present."""
        if self._prio.get(item, _MISSING) == prio:
            return
        self._prio[item] = prio
        heapq.heappush(self._heap, (prio, item))
        if len(self._heap) > 2 * len(self._prio) + 64:
            self._compact()

    def remove(self, item: K) -> None:
        del self._prio[item]
        if not self._prio:
            self._heap.clear()

    def discard(self, item: K) -> None:
        if item in self._prio:
            self.remove(item)

    def pop(self) -> tuple[K, object]:
        """Dequeue the minimum ``(item, priority)``; raises IndexError when empty."""
        heap, prio = self._heap, self._prio
        while heap:
            p, item = heapq.heappop(heap)
            if prio.get(item, _MISSING) == p:
                del prio[item]
                return item, p
        raise IndexError("pop from empty AddressableHeap")

    def peek(self) -> Optional[tuple[K, object]]:
        heap, prio = self._heap, self._prio
        while heap:
            p, item = heap[0]
            if prio.get(item, _MISSING) == p:
                return item, p
            heapq.heappop(heap)
        return None

    def _compact(self) -> None:
        self._heap = [(p, item) for item, p in self._prio.items()]
        heapq.heapify(self._heap)


class _Missing:
    __slots__ = ()

    def __eq__(self, other):
        return False

    def __hash__(self):
        return 0


_MISSING = _Missing()
