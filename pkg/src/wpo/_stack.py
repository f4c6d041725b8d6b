"""Run deeply recursive comparisons on a thread with a large C stack."""

import contextlib
import gc
import sys
import threading

# Python frames per level of term depth is at most ~8 in both engines.
_FRAMES_PER_LEVEL = 12
_SHALLOW = 60
_BASE_LIMIT = 5000
_STACK_BYTES = 512 * 1024 * 1024
_lock = threading.Lock()
_active = [0, 0]  # deep calls running, recursion limit to restore
_gc_pause = [0, False]  # comparisons running, collector state to restore


@contextlib.contextmanager
def gc_paused():
    """Suspend the cyclic collector.

    The engines allocate millions of small tuples and dict entries but no
    reference cycles, and on a large heap the collector's repeated scans cost
    a sizable share of the running time.
    """
    with _lock:
        if not _gc_pause[0]:
            _gc_pause[1] = gc.isenabled()
            gc.disable()
        _gc_pause[0] += 1
    try:
        yield
    finally:
        with _lock:
            _gc_pause[0] -= 1
            if not _gc_pause[0] and _gc_pause[1]:
                gc.enable()


def call_deep(depth: int, fn, *args, **kwargs):
    """Call ``fn`` directly for shallow inputs, on a big-stack thread otherwise.

    ``depth`` is the combined depth of the terms involved.  Exceptions raised
    by ``fn`` propagate to the caller.
    """
    with gc_paused():
        return _call_deep(depth, fn, *args, **kwargs)


def _call_deep(depth, fn, *args, **kwargs):
    if depth <= _SHALLOW:
        return fn(*args, **kwargs)
    needed = max(_BASE_LIMIT, depth * _FRAMES_PER_LEVEL + 1000)
    box: dict = {}

    def target():
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as e:  # re-raised in the caller's thread
            box["error"] = e

    with _lock:
        if not _active[0]:
            _active[1] = sys.getrecursionlimit()
        _active[0] += 1
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)
        old = threading.stack_size(_STACK_BYTES)
        try:
            worker = threading.Thread(target=target, name="wpo-deep")
            worker.start()
        finally:
            threading.stack_size(old)
    try:
        worker.join()
    finally:
        with _lock:
            _active[0] -= 1
            if not _active[0]:
                sys.setrecursionlimit(_active[1])
    if "error" in box:
        raise box["error"]
    return box["value"]
