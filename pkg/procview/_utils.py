import inspect
import re
from typing import Iterable, List, Tuple

from slugify import slugify

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _validate_typed_sequence(
    input_value, item_type, allow_tuple=True, allow_single=False, input_name=None
):
    """
    Validates that the input is a tuple or list (or optionally a single instance)
    of a specified type.

    Args:
        input_value: The value to validate.
        item_type: The expected type (or tuple of types) for each element.
        allow_tuple: If True, allows a tuple as well as a list.
        allow_single: If True, allows a single instance instead of a sequence.
        input_name: The name of the variable being validated (used for error
            messages). Derived from the caller's frame when omitted.

    Raises:
        TypeError: If the input is not a sequence of the specified type (or a
            single instance if allowed).
    """
    if input_name is None:
        caller_locals = inspect.currentframe().f_back.f_locals
        variable_name = [
            name for name, value in caller_locals.items() if value is input_value
        ]
        input_name = variable_name[0] if variable_name else "input"

    if isinstance(input_value, item_type) and allow_single:
        return

    type_label = getattr(item_type, "__name__", None) or " | ".join(
        t.__name__ for t in item_type
    )
    valid_types = (list, tuple) if allow_tuple else (list,)
    type_names = ", ".join(t.__name__ for t in valid_types)
    if not isinstance(input_value, valid_types):
        raise TypeError(
            f"`{input_name}` expects a ({type_names}) of type {type_label}, "
            f"but got {type(input_value).__name__}."
        )
    if not all(isinstance(item, item_type) for item in input_value):
        raise TypeError(
            f"All elements in `{input_name}` must be of type {type_label}, "
            f"but got {[type(item).__name__ for item in input_value]}."
        )


def _validate_identifier(name, input_name="name"):
    """
    Validates that `name` is an identifier of the specification language.

    Raises:
        TypeError: If `name` is not a string.
        ValueError: If `name` is not a valid identifier.
    """
    if not isinstance(name, str):
        raise TypeError(f"`{input_name}` expects a str, but got {type(name).__name__}.")
    if not IDENTIFIER.match(name):
        raise ValueError(f"`{input_name}` expects an identifier, but got {name!r}.")


def duplicates(names: Iterable[str]) -> List[str]:
    """Return names occurring more than once, in first-repeat order."""
    seen, repeated = set(), []
    for name in names:
        if name in seen and name not in repeated:
            repeated.append(name)
        seen.add(name)
    return repeated


def node_id(*parts: str) -> str:
    """
    Build an identifier safe for DOT and PNML from free-form parts.

    Connector names such as ``&`` or ``@`` are not valid XML ids, so parts are
    slugified and joined with underscores.
    """
    return "_".join(slugify(p, separator="_", lowercase=False) or "x" for p in parts)


def split_port(ref: str) -> Tuple[str, str]:
    """Split ``"instance.port"`` into its two halves."""
    instance, sep, port = ref.rpartition(".")
    if not sep or not instance or not port:
        raise ValueError(f"`ref` expects 'instance.port', but got {ref!r}.")
    return instance, port
