import os
from typing import IO, Union

from typing_extensions import TypeAlias, TypeGuard

from procview.export.trace_format import trace_from_json, trace_to_json
from procview.simulation.trace import Trace

FILE_LIKE: TypeAlias = Union[str, os.PathLike, IO[str]]


def _is_path(name_or_buffer) -> TypeGuard[Union[str, os.PathLike]]:
    return isinstance(name_or_buffer, (str, os.PathLike))


class _opener:
    def __init__(self, file_like):
        self.file_like = file_like

    def __enter__(self):
        return self.file_like

    def __exit__(self, *args):
        pass


class _open_file(_opener):
    def __init__(self, name, mode: str) -> None:
        super().__init__(open(name, mode, encoding="utf-8"))

    def __exit__(self, *args) -> None:
        self.file_like.close()


class _open_buffer_writer(_opener):
    def __init__(self, buffer) -> None:
        if not callable(getattr(buffer, "write", None)):
            msg = (
                f"Buffer of {str(type(buffer)).strip('<>')} "
                f"has no callable attribute 'write'"
            )
            if not hasattr(buffer, "write"):
                raise AttributeError(msg)
            raise TypeError(msg)
        super().__init__(buffer)

    def __exit__(self, *args) -> None:
        if callable(getattr(self.file_like, "flush", None)):
            self.file_like.flush()


def _open_writer(name_or_buffer) -> _opener:
    if _is_path(name_or_buffer):
        return _open_file(name_or_buffer, "w")
    return _open_buffer_writer(name_or_buffer)


def _open_reader(name_or_buffer) -> _opener:
    if _is_path(name_or_buffer):
        return _open_file(name_or_buffer, "r")
    return _opener(name_or_buffer)


def save(trace: Trace, f: FILE_LIKE) -> None:
    """
    Save a trace in the structured JSON format.

    Args:
        trace: The trace to save.
        f: A text file-like object (must implement write) or a string or
           os.PathLike object containing a file name.

    .. note::
        A common procview convention is to save traces with the .trace.json
        extension.

    Example:
        >>> # Save to file
        >>> trace = run(compile(Seq(Elem(p), Elem(q))), env, 20)
        >>> save(trace, "seq.trace.json")
        >>> # Save to io.StringIO buffer
        >>> buffer = io.StringIO()
        >>> save(trace, buffer)
    """
    if not isinstance(trace, Trace):
        raise TypeError(f"`trace` expects a Trace, but got {type(trace).__name__}.")
    if not _is_path(f) and not hasattr(f, "write"):
        raise AttributeError(
            "Expected 'f' to be string, path, or a file-like object with "
            "a 'write' attribute"
        )
    with _open_writer(f) as opened:
        opened.write(trace_to_json(trace))


def load(f: FILE_LIKE) -> Trace:
    """
    Load a trace saved by :func:`save`.

    Args:
        f: A text file-like object (must implement `read`) or a string or
            os.PathLike object containing a file name.

    Raises:
        RuntimeError: If the content is not a saved trace.

    Example:
        >>> trace = load("seq.trace.json")
    """
    with _open_reader(f) as opened:
        text = opened.read()
    try:
        return trace_from_json(text)
    except (KeyError, ValueError, TypeError) as e:
        raise RuntimeError(
            f"Content is not a saved trace. File might be corrupted ({e})."
        ) from e
