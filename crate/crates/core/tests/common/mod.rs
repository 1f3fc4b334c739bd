#![allow(dead_code)]

use proptest::prelude::*;
use rkode::expr::{BinaryOp, Constant, UnaryOp};
use rkode::Expr;

pub fn leaf(vars: &'static [char]) -> BoxedStrategy<Expr> {
    let number = prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Num(n as f64)),
        (0.0f64..100.0).prop_map(Expr::Num),
        (prop::num::f64::POSITIVE | prop::num::f64::ZERO)
            .prop_filter("finite", |v| v.is_finite())
            .prop_map(Expr::Num),
    ];
    prop_oneof![
        3 => number,
        3 => prop::sample::select(vars).prop_map(Expr::Var),
        1 => prop_oneof![Just(Expr::Const(Constant::E)), Just(Expr::Const(Constant::Pi))],
    ]
    .boxed()
}

pub fn unary_op() -> impl Strategy<Value = UnaryOp> {
    prop::sample::select(vec![
        UnaryOp::Neg,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Tan,
        UnaryOp::Log,
        UnaryOp::Exp,
    ])
}

pub fn binary_op() -> impl Strategy<Value = BinaryOp> {
    prop::sample::select(vec![
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
    ])
}

/// Random trees of depth at most 8 over `vars`.
pub fn expr_over(vars: &'static [char]) -> BoxedStrategy<Expr> {
    leaf(vars)
        .prop_recursive(7, 64, 2, |inner| {
            prop_oneof![
                (unary_op(), inner.clone()).prop_map(|(op, c)| Expr::unary(op, c)),
                (binary_op(), inner.clone(), inner).prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            ]
        })
        .boxed()
}

/// Every single lowercase letter except `e`, which names the constant.
pub const ALL_VARS: &[char] = &[
    'a', 'b', 'c', 'd', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's', 't', 'u', 'v', 'w', 'x',
    'y', 'z',
];

pub fn arb_expr() -> BoxedStrategy<Expr> {
    expr_over(ALL_VARS)
}
