from dataclasses import replace

import pytest

from procview.errors import SpecTypeError
from procview.process import (
    INPUT,
    OUTPUT,
    TRUE,
    Assignment,
    BehaviorSpec,
    BufferDecl,
    ChannelDecl,
    ElementaryProcessSpec,
    MsgBound,
    Present,
    const,
    ref,
    validate,
)
from procview.streams import BOOL, INT, Message
from tests.utils import FIXED, echo_spec


def codes(spec):
    return [d.code for d in validate(spec)]


class TestValidate:
    """
    Tests for the well-formedness rules of elementary processes.
    """

    def test_valid_specs(self):
        assert validate(FIXED) == []
        assert validate(echo_spec()) == []

    def test_missing_buffer(self):
        spec = replace(echo_spec(), buffers=())
        assert "MissingBuffer" in codes(spec)

    def test_buffer_type_mismatch(self):
        spec = replace(echo_spec(), buffers=(BufferDecl("a", Message.of_bool(True)),))
        assert codes(spec) == ["BufferTypeMismatch"]

    def test_buffer_for_unknown_channel(self):
        buffers = echo_spec().buffers + (BufferDecl("b", Message.of_int(0)),)
        assert "UnknownBufferChannel" in codes(replace(echo_spec(), buffers=buffers))

    def test_reserved_channel_names(self):
        spec = replace(
            FIXED, channels=(ChannelDecl("start", BOOL, INPUT),), buffers=()
        )
        assert "ReservedName" in codes(spec)

    def test_duplicate_names(self):
        channels = echo_spec().channels + (ChannelDecl("k", INT, OUTPUT),)
        assert "DuplicateName" in codes(replace(echo_spec(), channels=channels))

    def test_ending_must_be_bool(self):
        behavior = replace(FIXED.behavior, pr_ending=ref("k"))
        assert codes(replace(FIXED, behavior=behavior)) == ["TypeMismatch"]

    def test_unresolved_symbol(self):
        behavior = replace(FIXED.behavior, pr_ending=ref("unknown"))
        assert codes(replace(FIXED, behavior=behavior)) == ["UnresolvedSymbol"]

    def test_parameter_is_not_assignable(self):
        behavior = replace(FIXED.behavior, pr_calc=(Assignment("d", const(1)),))
        assert codes(replace(FIXED, behavior=behavior)) == ["InvalidTarget"]

    def test_output_expects_interval(self):
        calc_f = (Assignment("y", const(1)),)
        behavior = replace(echo_spec().behavior, pr_calc_f=calc_f)
        assert codes(replace(echo_spec(), behavior=behavior)) == ["TypeMismatch"]

    def test_duplicate_assignment(self):
        calc = (Assignment("k", const(1)), Assignment("k", const(2)))
        behavior = replace(FIXED.behavior, pr_calc=calc)
        assert codes(replace(FIXED, behavior=behavior)) == ["DuplicateAssignment"]

    def test_init_process_assigns_locals_only(self):
        init = (Assignment("d", const(1)),)
        behavior = replace(FIXED.behavior, init_process=init)
        assert codes(replace(FIXED, behavior=behavior)) == ["InvalidTarget"]

    def test_assumptions(self):
        spec = echo_spec()
        ok = replace(spec.behavior, assumption=(MsgBound(1, "a"),))
        assert validate(replace(spec, behavior=ok)) == []
        bad = replace(spec.behavior, assumption=(MsgBound(1, "b"),))
        assert codes(replace(spec, behavior=bad)) == ["UnresolvedSymbol"]

    def test_validation_collects_every_problem(self):
        behavior = BehaviorSpec(
            pr_ending=Present("x"),
            pr_calc=(Assignment("nowhere", TRUE),),
        )
        spec = ElementaryProcessSpec("Broken", behavior)
        assert codes(spec) == ["UnresolvedSymbol", "UnresolvedSymbol"]


class TestElementaryProcessSpec:
    """
    Tests for parameter binding and declared WCET bounds.
    """

    def test_bind(self):
        bound = FIXED.bind(d=7)
        assert bound.param_values()["d"] == Message.of_int(7)
        assert FIXED.param_values()["d"] == Message.of_int(3)
        assert bound.wcet_bound() == 7

    def test_bind_unknown_parameter(self):
        with pytest.raises(KeyError, match="no parameter 'x'"):
            FIXED.bind(x=1)

    def test_bind_wrong_type(self):
        with pytest.raises(SpecTypeError):
            FIXED.bind(d=True)

    def test_ports(self):
        spec = echo_spec()
        assert [c.name for c in spec.inputs] == ["a"]
        assert [c.name for c in spec.outputs] == ["y", "n"]
        assert spec.channel("y").msg_type == INT

    def test_wcet_bound_absent(self):
        assert replace(FIXED, declared_wcet=None).wcet_bound() is None

    def test_invalid_name(self):
        with pytest.raises(ValueError, match="identifier"):
            ElementaryProcessSpec("not a name", FIXED.behavior)
