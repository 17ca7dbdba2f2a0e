import os
from collections import OrderedDict
from collections.abc import Mapping


__all__ = ["CapExceededError", "Caps"]


class CapExceededError(ValueError):
    """An enumeration or search cap was exceeded.

    Parameters
    ----------
    name : str
        Name of the cap, as used by :class:`Caps`.
    limit : int
        Configured value of the cap.
    actual : int
        Size of the instance that was rejected.
    """
    def __init__(self, name, limit, actual):
        super().__init__("Instance size {} exceeds the {!r} cap of {}"
                         .format(actual, name, limit))
        self.name   = name
        self.limit  = limit
        self.actual = actual


class Caps(Mapping):
    """Enumeration caps.

    A read-only container of named integer caps. Keys are iterated in declaration order.
    Caps not given explicitly take their default value.

    Parameters
    ----------
    **caps : dict(str : int)
        Overrides of the default caps. Each value must be a positive integer.

    Examples
    --------
    >>> Caps(eulerian=32)["eulerian"]
    32
    """
    DEFAULTS = OrderedDict([
        ("orientations",  24),
        ("exhaustive",    20),
        ("pairs",         12),
        ("expansion",     26),
        ("eulerian",      30),
        ("solver_budget", 10 ** 7),
        ("visit_budget",  10 ** 4),
    ])

    ENV_VAR = "DPORIENT_CAPS"

    def __init__(self, **caps):
        self._storage = OrderedDict(self.DEFAULTS)
        for key, value in caps.items():
            if key not in self.DEFAULTS:
                raise ValueError("Unknown cap {!r}; must be one of {}"
                                 .format(key, ", ".join(self.DEFAULTS)))
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ValueError("Cap {} must be a positive integer, not {!r}"
                                 .format(key, value))
            self._storage[key] = value

    @staticmethod
    def parse_overrides(text):
        """Parse a comma separated list of ``name=value`` overrides into a dictionary."""
        overrides = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            name, sep, value = item.partition("=")
            if not sep:
                raise ValueError("Cap override must have the form name=value, not {!r}"
                                 .format(item))
            try:
                overrides[name.strip()] = int(value)
            except ValueError:
                raise ValueError("Cap {} must be a positive integer, not {!r}"
                                 .format(name.strip(), value)) from None
        return overrides

    @classmethod
    def parse(cls, text):
        """Parse a comma separated list of ``name=value`` overrides."""
        return cls(**cls.parse_overrides(text))

    @classmethod
    def from_env(cls, environ=None):
        """Build caps from the ``DPORIENT_CAPS`` environment variable.

        Arguments
        ---------
        environ : mapping or None
            Environment to read. ``os.environ`` by default.
        """
        if environ is None:
            environ = os.environ
        return cls.parse(environ.get(cls.ENV_VAR, ""))

    def replace(self, **caps):
        """Return a copy with some caps overridden."""
        merged = dict(self._storage)
        merged.update(caps)
        return Caps(**merged)

    def check(self, name, actual):
        """Raise :exn:`CapExceededError` if ``actual`` exceeds the cap called ``name``."""
        if actual > self._storage[name]:
            raise CapExceededError(name, self._storage[name], actual)

    def __getitem__(self, key):
        return self._storage[key]

    def __iter__(self):
        yield from self._storage

    def __len__(self):
        return len(self._storage)

    def __repr__(self):
        return "Caps({})".format(list(self._storage.items()))


def _resolve(caps):
    if caps is None:
        return Caps()
    if not isinstance(caps, Caps):
        raise TypeError("Caps must be an instance of Caps, not {!r}".format(caps))
    return caps
