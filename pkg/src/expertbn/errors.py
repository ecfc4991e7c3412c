"""Common error base.

Every domain error carries a stable ``code`` string so the CLI and HTTP
layers can emit structured diagnostics without pattern-matching messages.
"""

from __future__ import annotations


def _jsonable(v):
    if isinstance(v, (str, int, float, bool, type(None))):
        return v
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return repr(v)


class ExpertBnError(Exception):
    """Base class for all structured domain errors."""

    code = "error"

    def payload(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        for k, v in vars(self).items():
            if not k.startswith("_"):
                out.setdefault(k, _jsonable(v))
        return out
