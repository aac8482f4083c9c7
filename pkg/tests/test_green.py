from fractions import Fraction

import pytest

from fscalc.constants import OperatorKind, Problem, Scale
from fscalc.errors import BoundarySpaceError, UnknownOperatorError
from fscalc.green import (
    A_D,
    A_N,
    CATALOG,
    REGULARIZING,
    SOLUTION_OPERATOR,
    SYSTEMS,
    ClassViolation,
    SystemImage,
    apply_operator,
    apply_system,
    class_threshold,
    get_operator,
    get_system,
    image_of,
    parametrix_defect,
    trace_gamma1_bound,
)


class TestCatalog:
    @pytest.mark.parametrize(
        "name, order, class_, kind",
        [
            ("-Delta", 2, 0, OperatorKind.INTERIOR),
            ("gamma0", 0, 1, OperatorKind.TRACE),
            ("gamma1", 1, 2, OperatorKind.TRACE),
            ("R_D", -2, -1, OperatorKind.INTERIOR),
            ("K_D", 0, -1, OperatorKind.POISSON),
            ("R_N", -2, 0, OperatorKind.INTERIOR),
            ("K_N", -1, 0, OperatorKind.POISSON),
            ("R", None, 2, OperatorKind.REGULARIZING),
        ],
    )
    def test_entries(self, name, order, class_, kind):
        op = get_operator(name)
        assert (op.order, op.class_, op.kind) == (order, class_, kind)

    def test_read_only(self):
        with pytest.raises(TypeError):
            CATALOG["X"] = REGULARIZING
        with pytest.raises(TypeError):
            SYSTEMS["A_X"] = A_D

    def test_unknown(self):
        with pytest.raises(UnknownOperatorError):
            get_operator("gamma2")
        with pytest.raises(KeyError):
            get_system("A_X")

    def test_system_class(self):
        assert A_D.class_ == 1
        assert A_N.class_ == 2
        assert get_system("A_N") is A_N

    def test_solution_operators(self):
        assert SOLUTION_OPERATOR[Problem.DIRICHLET] is get_operator("R_D")
        assert SOLUTION_OPERATOR[Problem.NEUMANN] is get_operator("R_N")


class TestApply:
    def test_interior(self, space, ctx):
        assert apply_operator(get_operator("R_N"), space("F:0,2,2"), ctx()) == space(
            "F:2,2,2"
        )
        assert apply_operator(get_operator("-Delta"), space("B:2,2,1"), ctx()) == space(
            "B:0,2,1"
        )

    def test_class_violation(self, space, ctx):
        result = apply_operator(get_operator("R_N"), space("F:-3/5,2,2"), ctx())
        assert isinstance(result, ClassViolation)
        assert result.threshold == Fraction(-1, 2)
        assert result.class_ == 0
        assert not result.on_boundary
        assert "s must exceed -1/2" in str(result)

    def test_violation_on_threshold(self, space, ctx):
        result = apply_operator(get_operator("R_N"), space("F:-1/2,2,2"), ctx())
        assert isinstance(result, ClassViolation)
        assert result.on_boundary

    @pytest.mark.parametrize(
        "literal, n, expected",
        [
            ("F:2,2,2", 3, "B:1/2,2,2@boundary"),
            ("B:3,1,1", 2, "B:1,1,1@boundary"),
            ("F:3,1,4", 2, "B:1,1,1@boundary"),
        ],
    )
    def test_gamma1(self, space, ctx, literal, n, expected):
        assert trace_gamma1_bound(space(literal), ctx(n)) == space(expected)

    def test_gamma1_needs_d2(self, space, ctx):
        assert isinstance(trace_gamma1_bound(space("F:3/2,2,2"), ctx()), ClassViolation)

    def test_gamma0(self, space, ctx):
        assert apply_operator(get_operator("gamma0"), space("F:1,2,2"), ctx(2)) == space(
            "B:1/2,2,2@boundary"
        )

    def test_poisson(self, space, ctx):
        phi = space("B:1/2,2,2@boundary")
        assert apply_operator(get_operator("K_D"), phi, ctx()) == space("B:1,2,2")
        assert apply_operator(get_operator("K_D"), phi, ctx(), scale=Scale.F) == space(
            "F:1,2,2"
        )
        assert apply_operator(get_operator("K_N"), phi, ctx()) == space("B:2,2,2")

    def test_location(self, space, ctx):
        with pytest.raises(BoundarySpaceError):
            apply_operator(get_operator("K_D"), space("B:1,2,2"), ctx())
        with pytest.raises(BoundarySpaceError):
            apply_operator(get_operator("R_D"), space("B:1,2,2@boundary"), ctx())

    def test_regularizing(self, space, ctx):
        target = space("F:7,4,2")
        assert apply_operator(REGULARIZING, space("F:2,2,2"), ctx(), target=target) == (
            target
        )
        assert isinstance(
            apply_operator(REGULARIZING, space("F:1,2,2"), ctx(), target=target),
            ClassViolation,
        )
        with pytest.raises(ValueError):
            apply_operator(REGULARIZING, space("F:2,2,2"), ctx())
        with pytest.raises(ValueError):
            image_of(REGULARIZING, space("F:2,2,2"), ctx())

    def test_class_threshold(self, space, ctx):
        assert class_threshold(get_operator("R_D"), space("F:0,1/2,2"), ctx()) == 2


class TestSystems:
    def test_dirichlet(self, space, ctx):
        image = apply_system(A_D, space("F:2,2,2"), ctx())
        assert isinstance(image, SystemImage)
        assert image.interior == space("F:0,2,2")
        assert image.boundary == space("B:3/2,2,2@boundary")

    def test_neumann_needs_d2(self, space, ctx):
        result = apply_system(A_N, space("F:1,2,2"), ctx())
        assert isinstance(result, ClassViolation)
        assert result.operator == "A_N"
        assert result.threshold == Fraction(3, 2)

    def test_boundary(self, space, ctx):
        with pytest.raises(BoundarySpaceError):
            apply_system(A_D, space("B:2,2,2@boundary"), ctx())

    def test_inverse_round_trip(self, space, ctx):
        u = space("F:5/2,3,2")
        image = apply_system(A_D, u, ctx())
        assert apply_operator(get_operator("R_D"), image.interior, ctx()) == u
        assert (
            apply_operator(get_operator("K_D"), image.boundary, ctx(), scale=Scale.F)
            == space("F:5/2,3,3")
        )


class TestDefect:
    def test_dirichlet(self):
        assert parametrix_defect(Problem.DIRICHLET).is_zero

    def test_neumann(self):
        defect = parametrix_defect(Problem.NEUMANN)
        assert not defect.is_zero
        assert defect.operator is REGULARIZING
