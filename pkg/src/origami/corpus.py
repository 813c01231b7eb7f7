"""The worked example transducers used across tests, docs, and the CLI data
files: identity vs reversal (two-way), the one-two/two-one pair, the two
full-relation transducers, and the fast/slow pair.
"""

from .transducers import (OneWayTransducer, TwoWayTransducer, EPS, LMARK, RMARK,
                          LEFT, RIGHT)


def t_id():
    """Two-way identity over {a}: copy on a single left-to-right pass."""
    return TwoWayTransducer(
        states={"p0", "p1"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("p0", LMARK, (), RIGHT, "p0"),
            ("p0", "a", ("a",), RIGHT, "p0"),
            ("p0", RMARK, (), LEFT, "p1"),
        ),
        initial={"p0"},
        final={"p1"},
        name="T_id",
    )


def t_rev():
    """Two-way reversal over {a}: silent pass right, then emit moving left."""
    return TwoWayTransducer(
        states={"q0", "q1", "q2"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("q0", LMARK, (), RIGHT, "q0"),
            ("q0", "a", (), RIGHT, "q0"),
            ("q0", RMARK, (), LEFT, "q1"),
            ("q1", "a", ("a",), LEFT, "q1"),
            ("q1", LMARK, (), RIGHT, "q2"),
        ),
        initial={"q0"},
        final={"q2"},
        name="T_rev",
    )


def t_one_two():
    """Copies a prefix once and the rest twice: (a^n, a^m) with n <= m <= 2n."""
    return OneWayTransducer(
        states={"p0", "p1"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("p0", "a", ("a",), "p0"),
            ("p0", EPS, (), "p1"),
            ("p1", "a", ("a", "a"), "p1"),
        ),
        initial={"p0"},
        final={"p1"},
        name="T_one-two",
    )


def t_two_one():
    """Copies a prefix twice and the rest once; same relation as t_one_two."""
    return OneWayTransducer(
        states={"q0", "q1"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("q0", "a", ("a", "a"), "q0"),
            ("q0", EPS, (), "q1"),
            ("q1", "a", ("a",), "q1"),
        ),
        initial={"q0"},
        final={"q1"},
        name="T_two-one",
    )


def t_first():
    """Full relation with every origin on the first input letter."""
    return OneWayTransducer(
        states={"q0", "q1"},
        input_alphabet={"a", "b"},
        output_alphabet={"c", "d"},
        transitions=(
            ("q0", EPS, ("c",), "q0"),
            ("q0", EPS, ("d",), "q0"),
            ("q0", EPS, (), "q1"),
            ("q1", "a", (), "q1"),
            ("q1", "b", (), "q1"),
        ),
        initial={"q0"},
        final={"q1"},
        name="T_first",
    )


def t_last():
    """Full relation with every origin on the last input letter."""
    return OneWayTransducer(
        states={"p0", "p1"},
        input_alphabet={"a", "b"},
        output_alphabet={"c", "d"},
        transitions=(
            ("p0", "a", (), "p0"),
            ("p0", "b", (), "p0"),
            ("p0", EPS, (), "p1"),
            ("p1", EPS, ("c",), "p1"),
            ("p1", EPS, ("d",), "p1"),
        ),
        initial={"p0"},
        final={"p1"},
        name="T_last",
    )


def t_fast():
    """Emits the whole output at the first position, then reads silently."""
    return OneWayTransducer(
        states={"p0", "p1"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("p0", EPS, ("a",), "p0"),
            ("p0", EPS, (), "p1"),
            ("p1", "a", (), "p1"),
        ),
        initial={"p0"},
        final={"p1"},
        name="T_fast",
    )


def t_slow():
    """Copies, then either drops the tail or pads at the end.

    All three states accept; with a non-accepting start the advertised
    relation {(a^n, a^m)} would miss the diagonal m = n.
    """
    return OneWayTransducer(
        states={"q0", "q1", "q2"},
        input_alphabet={"a"},
        output_alphabet={"a"},
        transitions=(
            ("q0", "a", ("a",), "q0"),
            ("q0", "a", (), "q1"),
            ("q1", "a", (), "q1"),
            ("q0", EPS, ("a",), "q2"),
            ("q2", EPS, ("a",), "q2"),
        ),
        initial={"q0"},
        final={"q0", "q1", "q2"},
        name="T_slow",
    )


def all_corpus():
    return [t_id(), t_rev(), t_one_two(), t_two_one(), t_first(), t_last(),
            t_fast(), t_slow()]
