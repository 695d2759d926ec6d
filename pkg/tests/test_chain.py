"""유도 체인, 재귀 클래스, 흡수, 할인 시스템 테스트"""

from fractions import Fraction

import pytest

from src.arena.model import Player
from src.chain import (
    ChainNode,
    RecurrentClassSummary,
    absorption,
    bottom_sccs,
    chain_document,
    discounted_values,
    hitting_values,
    induce_chain,
    solve,
    solve_vector,
)
from src.core.exceptions import (
    ClassSummaryError,
    ColourKindError,
    MemoryAutomatonError,
    SingularSystemError,
    UnsupportedPayoffError,
)
from src.payoff import (
    CounterLimsupPosInf,
    CounterLiminfNegInf,
    GeometricFirstOne,
    Limsup,
    Mean,
    Parity,
    PositiveAverage,
    class_value,
)
from src.payoff.colours import ColourKind
from src.strategy.model import PureStationaryStrategy, trivial_strategy
from src.verify import fixtures


def _chain_without_choices(arena):
    return induce_chain(arena, trivial_strategy(arena, Player.P1), trivial_strategy(arena, Player.P2))


class TestLinearAlgebra:
    def test_solve_vector(self):
        assert solve_vector([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]

    def test_multiple_right_hand_sides(self):
        x = solve([[1, 0], [0, 2]], [[1, 2], [4, 6]])
        assert x == [[1, 2], [2, 3]]

    def test_singular(self):
        with pytest.raises(SingularSystemError):
            solve_vector([[1, 2], [2, 4]], [1, 2])

    def test_row_count_mismatch(self):
        with pytest.raises(ValueError):
            solve([[1]], [[1], [2]])


class TestInducedChain:
    def test_nodes_and_rows(self, e3):
        chain = _chain_without_choices(e3)
        assert len(chain) == 3
        assert chain.nodes[0] == ChainNode("s", "m0", "m0")
        assert chain.rows[0] == {1: Fraction(1, 2), 2: Fraction(1, 2)}
        assert all(sum(row.values()) == 1 for row in chain.rows)

    def test_memory_product(self, e2):
        sigma = fixtures.e2_weak_sigma()
        chain = induce_chain(e2, sigma, trivial_strategy(e2, Player.P2))
        assert len(chain) == 4
        assert chain.initial_node("s") == chain.index[ChainNode("s", "m0", "m0")]
        assert chain.action_law(chain.node("s", "m1")) == {"stay": 1}

    def test_wrong_players(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        with pytest.raises(MemoryAutomatonError):
            induce_chain(e2, sigma, sigma)

    def test_unavailable_action(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "loop", "t": "loop"})
        with pytest.raises(MemoryAutomatonError):
            induce_chain(e2, sigma, trivial_strategy(e2, Player.P2))

    def test_document_labels(self, e3):
        document = chain_document(_chain_without_choices(e3))
        assert document["nodes"][0]["node"] == "s|m0|m0"
        assert document["nodes"][0]["successors"] == [
            {"node": "t|m0|m0", "prob": "1/2"},
            {"node": "u|m0|m0", "prob": "1/2"},
        ]

    def test_reachable_subchain(self, e2):
        chain = induce_chain(e2, fixtures.e2_weak_sigma(), trivial_strategy(e2, Player.P2))
        sub, position = chain.reachable_subchain(chain.initial_node(s) for s in e2.states)
        assert position == {0: 0, 2: 1}
        assert sub.nodes == (ChainNode("s", "m0", "m0"), ChainNode("t", "m0", "m0"))
        assert sub.rows == ({1: 1}, {1: 1})
        assert sub.initial_node("t") == 1

    def test_structure_ignores_memory_labels(self, e2):
        weak = induce_chain(e2, fixtures.e2_weak_sigma(), trivial_strategy(e2, Player.P2))
        sub, _ = weak.reachable_subchain([weak.initial_node("s")])
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        plain = induce_chain(e2, sigma, trivial_strategy(e2, Player.P2))
        assert sub.structure() == plain.structure()
        assert sub.structure() != weak.structure()


class TestRecurrence:
    def test_two_absorbing_classes(self, e3):
        classes = bottom_sccs(_chain_without_choices(e3))
        assert [c.nodes for c in classes] == [(1,), (2,)]
        assert classes[1].mean_reward() == 2

    def test_stationary_distribution(self):
        arena = fixtures.one_counter()
        sigma = PureStationaryStrategy(Player.P1, {"x": "up"})
        tau = PureStationaryStrategy(Player.P2, {"y": "coin"})
        (summary,) = bottom_sccs(induce_chain(arena, sigma, tau))
        assert summary.stationary == {0: Fraction(1, 3), 1: Fraction(2, 3)}
        assert summary.mean_reward() == Fraction(1, 3)

    def test_potential_for_balanced_counter(self):
        arena = fixtures.one_counter()
        sigma = PureStationaryStrategy(Player.P1, {"x": "up"})
        tau = PureStationaryStrategy(Player.P2, {"y": "down"})
        (summary,) = bottom_sccs(induce_chain(arena, sigma, tau))
        assert summary.mean_reward() == 0
        assert summary.potential == {0: 0, 1: 1}

    def test_no_potential_with_coin(self):
        arena = fixtures.one_counter()
        sigma = PureStationaryStrategy(Player.P1, {"x": "down"})
        tau = PureStationaryStrategy(Player.P2, {"y": "coin"})
        (summary,) = bottom_sccs(induce_chain(arena, sigma, tau))
        assert not summary.has_potential


class TestAbsorption:
    def test_absorption_probabilities(self, e3):
        chain = _chain_without_choices(e3)
        assert absorption(chain, 0) == {0: Fraction(1, 2), 1: Fraction(1, 2)}
        assert absorption(chain, 2) == {0: 0, 1: 1}

    def test_hitting_values(self, e3):
        chain = _chain_without_choices(e3)
        assert hitting_values(chain, {0: Fraction(0), 1: Fraction(2)}) == [1, 0, 2]

    def test_unknown_source(self, e3):
        with pytest.raises(KeyError):
            absorption(_chain_without_choices(e3), 7)


class TestDiscounted:
    def test_single_loop(self):
        arena = fixtures.build_arena(
            "loop",
            {"x": "P1"},
            [("x", "a", {"reward": 1, "discount": "1/2"}, {"x": 1})],
            ColourKind.DISCOUNTED,
        )
        sigma = PureStationaryStrategy(Player.P1, {"x": "a"})
        tau = PureStationaryStrategy(Player.P2, {})
        assert discounted_values(arena, sigma, tau) == {ChainNode("x", "m0", "m0"): 2}

    def test_two_states(self):
        arena = fixtures.build_arena(
            "pair",
            {"x": "P1", "y": "P1"},
            [
                ("x", "a", {"reward": 2, "discount": "1/2"}, {"y": 1}),
                ("y", "a", {"reward": 0, "discount": "1/2"}, {"x": 1}),
            ],
            ColourKind.DISCOUNTED,
        )
        sigma = PureStationaryStrategy(Player.P1, {"x": "a", "y": "a"})
        values = discounted_values(arena, sigma, PureStationaryStrategy(Player.P2, {}))
        # v_x = 2 + v_y / 2, v_y = v_x / 2
        assert values[ChainNode("x", "m0", "m0")] == Fraction(8, 3)
        assert values[ChainNode("y", "m0", "m0")] == Fraction(4, 3)

    def test_requires_discounted_colours(self, e2):
        sigma = PureStationaryStrategy(Player.P1, {"s": "go", "t": "loop"})
        with pytest.raises(ColourKindError):
            discounted_values(e2, sigma, trivial_strategy(e2, Player.P2))


class TestClassValue:
    def test_reward_variants(self, e3):
        low, high = bottom_sccs(_chain_without_choices(e3))
        assert class_value(Mean(), high) == 2
        assert class_value(PositiveAverage(), low) == 0
        assert class_value(Limsup(), high) == 2

    def test_parity(self):
        arena = fixtures.e3(ColourKind.PRIORITY)
        even, odd = bottom_sccs(_chain_without_choices(arena))
        assert class_value(Parity(), even) == 0
        assert class_value(Parity(), odd) == 1

    def test_bounded_counter(self):
        arena = fixtures.one_counter()
        sigma = PureStationaryStrategy(Player.P1, {"x": "up"})
        tau = PureStationaryStrategy(Player.P2, {"y": "down"})
        (summary,) = bottom_sccs(induce_chain(arena, sigma, tau))
        assert class_value(CounterLimsupPosInf(), summary) == 0
        assert class_value(CounterLiminfNegInf(), summary) == 0

    def test_unsupported(self, e3):
        summary = bottom_sccs(_chain_without_choices(e3))[0]
        with pytest.raises(UnsupportedPayoffError):
            class_value(GeometricFirstOne(), summary)

    def test_inconsistent_summary(self, e3):
        summary = bottom_sccs(_chain_without_choices(e3))[0]
        broken = RecurrentClassSummary(summary.nodes, {n: Fraction(1, 2) for n in summary.nodes}, summary.colour_weights)
        with pytest.raises(ClassSummaryError):
            class_value(Mean(), broken)
