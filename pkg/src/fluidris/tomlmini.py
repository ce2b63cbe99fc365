"""Minimal TOML-subset reader for scenario configs.

Supports exactly what the bundled configs use: ``[section]`` tables, scalar
keys (strings, integers, floats, booleans) and flat arrays of numbers, with
``#`` comments.  This exists because the runtime targets Python 3.10 (no
stdlib tomllib) and the deployment environment carries no third-party TOML
parser; JSON mirrors of every config are accepted as a first-class
alternative.
"""

from fluidris.errors import ConfigurationError

__all__ = ["loads"]


def _scalar(text: str, where: str):
    text = text.strip()
    if not text:
        raise ConfigurationError(f"empty value {where}")
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"cannot parse value {text!r} {where}") from None


def loads(text: str) -> dict:
    """Parse a TOML-subset document into nested dicts."""
    root: dict = {}
    table = root
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if '"' in line:
            # strip comments only outside string values
            quote = line.index('"')
            hash_pos = line.find("#")
            if 0 <= hash_pos < quote:
                line = line[:hash_pos].strip()
        elif "#" in line:
            line = line[: line.index("#")].strip()
        if not line:
            continue
        where = f"at line {lineno}"
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigurationError(f"malformed table header {where}")
            name = line[1:-1].strip()
            if not name or "." in name:
                raise ConfigurationError(f"unsupported table name {name!r} {where}")
            table = root.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigurationError(f"expected key = value {where}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigurationError(f"missing key {where}")
        if value.startswith("["):
            if not value.endswith("]"):
                raise ConfigurationError(f"arrays must be single-line {where}")
            inner = value[1:-1].strip()
            table[key] = [_scalar(v, where) for v in inner.split(",")] if inner else []
        else:
            table[key] = _scalar(value, where)
    return root
