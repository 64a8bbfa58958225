import json
import time


class TimeCounter:
    """Phase timer: `clear()` once, then `timeit(name)` after each phase."""
    def __init__(self) -> None:
        self.clear()

    def clear(self):
        self.timedict = {}
        self.basetime = time.perf_counter()

    def timeit(self, name):
        nowtime = time.perf_counter() - self.basetime
        self.timedict[name] = self.timedict.get(name, 0.0) + nowtime
        self.basetime = time.perf_counter()

    def __str__(self):
        return json.dumps({k: round(v, 4) for k, v in self.timedict.items()})

