"""Differential-operator algebra and the eigenoperator pipeline."""

import dataclasses
import math
from fractions import Fraction

import pytest

from jacobisobolev.construct import build_z, sobolev_poly
from jacobisobolev.diffop import (
    AssumptionFailed,
    DiffOp,
    EigenMismatch,
    build_bundle,
    check_order,
    compose,
    d_operators,
    default_s,
    degree_of_P_check,
    operator_order,
    p_from_y_tuple,
    verify_eigen,
    xi,
)
from jacobisobolev.exactmath import (
    ONE,
    Poly,
    RationalFunction,
    X,
    involute,
    pochhammer,
    theta_substitute,
)
from jacobisobolev.jacobi import JacobiContext, classical_operator, jacobi_poly
from jacobisobolev.sobolev import SobolevConfig

from conftest import cached_bundle, random_configs


def ctx(a, b):
    return JacobiContext(Fraction(a), Fraction(b))


def scalar_example_config(alpha, mass=Fraction(1)):
    return SobolevConfig(
        alpha=alpha, beta=alpha, m1=1, m2=1, M=[[mass]], N=[[mass]]
    )


def lowered_order_s(cfg, bundle):
    """The degree-lowering S for the equal-scalar-mass configuration."""
    a = cfg.alpha
    mass = cfg.M[0][0]
    r = Poly.constant(Fraction(4 ** (a - 1) * math.factorial(a - 1))) + (
        mass * pochhammer(X - 1, a) * pochhammer(X + a, a)
    ) * Fraction(1, 2 * math.factorial(a))
    sigma_half = Poly([2 * a - 2, 2])  # 2x + 2*alpha - 2
    return RationalFunction(sigma_half * r) / bundle.Omega


class TestDiffOp:
    def test_order_and_algebra_predicate(self):
        assert DiffOp([ONE]).order == 0
        assert DiffOp([Poly([]), X]).in_algebra
        assert not DiffOp([X]).in_algebra  # degree-1 coefficient on derivative 0
        assert classical_operator(ctx(5, 2)).in_algebra

    def test_apply_linearity(self):
        op = classical_operator(ctx(2, 1))
        p, q = (X + 1) * X, X * X * X
        assert op.apply(p + q) == op.apply(p) + op.apply(q)

    def test_json_export(self):
        op = DiffOp([ONE, X])
        data = op.to_json()
        assert data["order"] == 1


class TestCompose:
    def test_product_rule(self):
        ddx = DiffOp([Poly([]), ONE])
        times_x = DiffOp([X])
        assert compose(ddx, times_x).apply(ONE) == ONE

    def test_identity_neutral(self):
        op = classical_operator(ctx(2, 1))
        assert compose(op, DiffOp.identity()) == op
        assert compose(DiffOp.identity(), op) == op

    def test_squared_classical_operator(self):
        c = ctx(2, 1)
        op2 = compose(classical_operator(c), classical_operator(c))
        for n in range(7):
            jn = jacobi_poly(c, n)
            assert op2.apply(jn) == c.theta(n) ** 2 * jn

    def test_agrees_with_sequential_application(self):
        a = DiffOp([X, ONE])
        b = DiffOp([Poly([]), X * X - 1])
        p = Poly([1, -2, 0, 3])
        assert compose(a, b).apply(p) == a.apply(b.apply(p))


class TestDOperators:
    def test_constant_action(self):
        a, b = 2, 1
        ops = d_operators(ctx(a, b), 1, 1)
        assert ops[0].apply(ONE) == Poly.constant(Fraction(-(a + b + 1), 2))
        assert ops[1].apply(ONE) == Poly.constant(Fraction(a + b + 1, 2))

    def test_block_assignment_and_order(self):
        ops = d_operators(ctx(3, 2), 2, 1)
        assert len(ops) == 3
        assert ops[0] == ops[1] and ops[0] != ops[2]
        for op in ops:
            assert op.order == 1 and op.in_algebra

    def test_lower_triangular_expansion(self):
        for (a, b) in [(2, 1), (3, 3)]:
            c = ctx(a, b)
            ops = d_operators(c, 1, 1)
            eps = [
                lambda n: Fraction(-(n + a), n + b),
                lambda n: Fraction(1),
            ]
            sig = [
                lambda n: Fraction(2 * n + a + b - 1),
                lambda n: Fraction(-(2 * n + a + b - 1)),
            ]
            for h in (0, 1):
                for n in range(6):
                    expected = Fraction(-1, 2) * sig[h](n + 1) * jacobi_poly(c, n)
                    for j in range(1, n + 1):
                        prod = Fraction(1)
                        for t in range(j):
                            prod *= eps[h](n - t)
                        expected += (-1) ** (j + 1) * sig[h](n - j + 1) * prod * jacobi_poly(c, n - j)
                    assert ops[h].apply(jacobi_poly(c, n)) == expected


class TestXi:
    def test_second_block_trivial(self):
        c = ctx(2, 1)
        for j in (-2, 0, 3):
            assert xi(c, 1, 2, j) == RationalFunction(ONE)

    def test_zero_shift(self):
        assert xi(ctx(2, 1), 1, 1, 0) == RationalFunction(ONE)

    def test_two_step_quotient(self):
        assert xi(ctx(2, 1), 1, 1, 2) == RationalFunction(X + 2, X)

    def test_negative_shift_reciprocal(self):
        c = ctx(2, 1)
        val = xi(c, 1, 1, -2)
        forward = xi(c, 1, 1, 2)
        # the defining extension: value at shift -j is 1 over the value at
        # shift +j evaluated j steps to the right
        assert val * RationalFunction(forward.num.shift(2), forward.den.shift(2)) == RationalFunction(ONE)


class TestBundleDefaultS:
    def test_default_s_scalar_case(self):
        for a in (1, 2):
            cfg = scalar_example_config(a)
            sys_z = build_z(cfg)
            assert default_s(cfg, sys_z) == RationalFunction(-(X + a - 1))

    def test_omega_factorizes(self):
        cfg = scalar_example_config(2)
        bundle = cached_bundle(cfg)
        z1 = build_z(cfg).z[0]
        assert bundle.Omega == RationalFunction(-2 * z1.shift(-1) * z1.shift(-2))

    def test_bundle_invariants(self):
        cfg = random_configs((2, 1, 1, 1), count=1)[0]
        sys_z = build_z(cfg)
        bundle = cached_bundle(cfg)
        a, b = cfg.alpha, cfg.beta
        assert bundle.SOmega == (bundle.S * bundle.Omega).as_poly()
        sigma_next = Poly([a + b + 1, 2])
        for h in range(cfg.m):
            block_sigma = sigma_next if h < cfg.m1 else -sigma_next
            assert bundle.Mh[h] == block_sigma * theta_substitute(
                bundle.MhTilde[h], a, b
            )
        lhs = theta_substitute(bundle.PS, a, b)
        rhs = 2 * bundle.lam
        for h in range(cfg.m):
            rhs = rhs + sys_z.z[h] * bundle.Mh[h]
        assert lhs == rhs
        assert bundle.D.in_algebra

    def test_eigenvalue_generator_difference_equation(self):
        cfg = random_configs((2, 2, 1, 1), count=1)[0]
        bundle = cached_bundle(cfg)
        a, b = cfg.alpha, cfg.beta
        ps_x = theta_substitute(bundle.PS, a, b)
        assert ps_x - ps_x.shift(-1) == bundle.SOmega + bundle.SOmega.shift(cfg.m)

    def test_involution_symmetries(self):
        cfg = random_configs((3, 2, 2, 1), count=1)[0]
        bundle = cached_bundle(cfg)
        gamma = cfg.alpha + cfg.beta
        for mh in bundle.Mh:
            assert involute(mh, gamma) == -mh
        assert involute(bundle.SOmega, gamma - 1) == -bundle.SOmega.shift(cfg.m)


class TestEigenProperty:
    def test_generic_config(self):
        cfg = random_configs((2, 1, 1, 1), count=1)[0]
        sys_z = build_z(cfg)
        bundle = cached_bundle(cfg)
        values = verify_eigen(bundle, cfg, sys_z, 8)
        assert len(values) == 9
        # re-check one instance directly
        q5 = sobolev_poly(sys_z, cfg, 5)
        assert bundle.D.apply(q5) == values[5] * q5

    def test_degree_zero_preserved(self):
        cfg = random_configs((2, 2, 1, 1), count=1)[0]
        sys_z = build_z(cfg)
        bundle = cached_bundle(cfg)
        q0 = sobolev_poly(sys_z, cfg, 0)
        assert bundle.D.apply(q0).degree <= 0

    def test_tampered_operator_is_detected(self):
        cfg = random_configs((2, 1, 1, 1), count=1)[0]
        sys_z = build_z(cfg)
        bundle = cached_bundle(cfg)
        broken = dataclasses.replace(bundle, D=bundle.D + DiffOp([Poly([]), X]))
        with pytest.raises(EigenMismatch):
            verify_eigen(broken, cfg, sys_z, 4)


class TestCustomS:
    def test_lowered_order_scalar_case(self):
        a = 1
        cfg = scalar_example_config(a)
        sys_z = build_z(cfg)
        base = cached_bundle(cfg)
        assert operator_order(base) == 4 * a + 2
        custom = build_bundle(cfg, sys_z, lowered_order_s(cfg, base))
        assert operator_order(custom) == 2 * a + 2
        verify_eigen(custom, cfg, sys_z, 6)
        # displayed intermediate quantities
        sigma_next = Poly([2 * a + 1, 2])
        assert custom.Mh[0] == sigma_next * Fraction(1, 4)
        assert custom.Mh[1] == sigma_next * Fraction(1, 4)
        assert custom.MhTilde[0] == Poly.constant(Fraction(1, 4))
        assert custom.MhTilde[1] == Poly.constant(Fraction(-1, 4))
        displayed_lam = X * (X + 1) + (X - 1) * X * (X + 1) * (X + 2) * Fraction(1, 4)
        assert (custom.lam - displayed_lam).degree <= 0
        assert custom.PS.degree == a + 1

    def test_invalid_custom_s_rejected(self):
        cfg = scalar_example_config(1)
        sys_z = build_z(cfg)
        with pytest.raises(AssumptionFailed):
            build_bundle(cfg, sys_z, RationalFunction(X, X + 1))


class TestOrderPrediction:
    def test_check_order_generic(self):
        for shape in [(2, 1, 1, 1), (2, 2, 1, 1)]:
            cfg = random_configs(shape, count=1)[0]
            assert check_order(cached_bundle(cfg), cfg)


class TestYTupleStructure:
    def test_swap_within_block_negates_operator(self):
        cfg = random_configs((3, 2, 2, 1), count=1)[0]
        sys_z = build_z(cfg)
        base = cached_bundle(cfg)
        swapped = dataclasses.replace(
            sys_z,
            z=[sys_z.z[1], sys_z.z[0], sys_z.z[2]],
            Y=[sys_z.Y[1], sys_z.Y[0], sys_z.Y[2]],
        )
        assert build_bundle(cfg, swapped).D == -base.D

    def test_in_block_combination_scales_operator(self):
        cfg = random_configs((3, 2, 2, 1), count=1)[0]
        sys_z = build_z(cfg)
        base = cached_bundle(cfg)
        a, b = Fraction(2), Fraction(3)
        mixed = dataclasses.replace(
            sys_z,
            z=[a * sys_z.z[0] + b * sys_z.z[1], sys_z.z[1], sys_z.z[2]],
            Y=[a * sys_z.Y[0] + b * sys_z.Y[1], sys_z.Y[1], sys_z.Y[2]],
        )
        assert build_bundle(cfg, mixed).D == a * base.D


class TestDegreeLaw:
    def test_single_left_factor(self):
        p, d, lead = p_from_y_tuple(Fraction(2), Fraction(2), 1, 0, [X + 1])
        assert p.degree == d == 2
        assert p.lead == lead

    def test_degree_collapse(self):
        ys = [Poly.constant(3), 2 * X + 1]
        p, d, lead = p_from_y_tuple(Fraction(3), Fraction(3), 2, 0, ys)
        assert d == 0
        assert p.degree <= 0

    def test_full_config_check(self):
        cfg = random_configs((3, 2, 2, 1), count=1)[0]
        assert degree_of_P_check(cfg, build_z(cfg))
