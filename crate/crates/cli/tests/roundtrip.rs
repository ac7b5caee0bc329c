use mzv_cli::expr::{parse, Expr};
use mzv_core::{Atom, GeneralForm, MultiIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CORPUS: &[&str] = &[
    "zeta(2)",
    "zeta(1,2)",
    "zeta(2,3,4)",
    "zeta({1}^3,2)",
    "zeta({2}^4)",
    "zeta({1}^2,{2}^2,3)",
    "zeta(2,bar2)",
    "zeta(bar1,bar3)",
    "zeta(bar2)",
    "zetastar(1,2)",
    "zetastar({1}^3,2)",
    "zetastar(2,2)",
    "zetastar(1,1,{2}^3)",
    "zetastar(3,bar2)",
    "zb(2,3; 1,1)",
    "zb(3; )",
    "zb({1}^2,4; {1}^3)",
    "zl(2; 2)",
    "zl(1,3; 2,2)",
    "zu(3; 1)",
    "zu(1,1,4; 1,1)",
    "zu(2;)",
    "1",
    "0",
    "7/4",
    "12/8",
    "123456789012345678901234567890",
    "-1",
    "--zeta(2)",
    "1 + 2",
    "1 - 2 - 3",
    "1 - (2 - 3)",
    "(1 - 2) - 3",
    "2*3*4",
    "2*(3*4)",
    "zeta(2)^2",
    "-zeta(2)^2",
    "(-zeta(2))^2",
    "(zeta(2)^2)^3",
    "(7/4)^2",
    "zeta(2)*zeta(3) - zeta(5) - zeta(2,3) - zeta(3,2)",
    "zb(2,3; 1,1) - 7/4*zeta(5)",
    "zetastar(1,2) - 2*zeta(3)",
    "zetastar(2,2) - 7/4*zeta(4)",
    "zeta(2,2) - 3/4*zeta(4)",
    "zetastar(1,1,2) - 3*zeta(4)",
    "2*zeta(2,bar2)*(1 - 1/2)",
    "(zeta(2) + zeta(3))*(zeta(2) - zeta(3))",
    "-(zeta(2)*zeta(3))",
    "-(zeta(2) + 1)",
    "zeta(2)*-zeta(3)",
    "1 + -2",
    "zu(1,3; 1) - zb(1,3; 1) - zb(1,1,3; )",
    "zl(2; 2) - zb(2; 2) - zb(2,2; )",
    "  zeta( 1 , 2 )+zetastar({1} ^ 2 , 3 ) ",
    "zeta(2)\n  - zeta(1,\n 2)",
    "((((zeta(3)))))",
    "3*zeta(2)^2*zeta(3)",
    "1/2*zeta(2)^2 - 2*zeta(1,3) - zeta(2,2)",
    "zeta(2)^0",
];

#[test]
fn corpus_round_trips() {
    assert!(CORPUS.len() >= 50);
    for src in CORPUS {
        let ast = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = ast.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again, ast, "{src} -> {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn combination_display_reparses() {
    for src in CORPUS {
        let combo = parse(src).unwrap().to_combo();
        let back = parse(&combo.to_string()).unwrap().to_combo();
        assert_eq!(back, combo, "{src}");
    }
}

fn index() -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec((1u32..5, any::<bool>()), 1..4).prop_map(|v| {
        let (e, b): (Vec<u32>, Vec<bool>) = v.into_iter().unzip();
        MultiIndex::signed(e, b)
    })
}

fn plain() -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(1u32..5, 0..4).prop_map(MultiIndex::new)
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..50, 1i64..9).prop_map(|(n, d)| Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        index().prop_map(|i| Expr::Atom(Atom::Zeta(i))),
        index().prop_map(|i| Expr::Atom(Atom::ZetaStar(i))),
        (plain(), plain()).prop_map(|(u, l)| Expr::Atom(Atom::Form(GeneralForm::zb(u, l)))),
        (plain(), plain()).prop_map(|(u, l)| Expr::Atom(Atom::Form(GeneralForm::zu(u, l)))),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(x, n)| Expr::Pow(Box::new(x), n)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_trees_reparse(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e);
    }
}
