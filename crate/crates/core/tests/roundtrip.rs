mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use es6migrate_core::frontend::visit::{walk_program, Ancestors, Ctx, Role, Visitor};
use es6migrate_core::frontend::{
    parse_str, print, AssignOp, BinaryOp, Expr, ExprKind, Function, MemberProp, Program, PropKey,
    Property, Stmt, StmtKind, UnaryOp, UpdateOp,
};

use common::{files_with, fixtures};

#[derive(Default)]
struct Notation {
    dot: Vec<String>,
    bracket: usize,
}

impl<'a> Visitor<'a> for Notation {
    fn expr(&mut self, e: &'a Expr, _role: Role, _anc: &Ancestors<'a>, _cx: &Ctx<'a>) {
        if let ExprKind::Member { property, .. } = &e.kind {
            match property {
                MemberProp::Dot(n) => self.dot.push(n.clone()),
                MemberProp::Bracket(_) => self.bracket += 1,
            }
        }
    }
}

fn notation(p: &Program) -> (Vec<String>, usize) {
    let mut n = Notation::default();
    walk_program(p, &mut n);
    (n.dot, n.bracket)
}

/// parse, print, parse again: same tree, same member notation, and printing
/// is a fixpoint.
fn round_trip(label: &str, p: &Program) {
    let printed = print(p).unwrap_or_else(|e| panic!("{label}: {e}"));
    let again = parse_str(&printed).unwrap_or_else(|e| panic!("{label}: {e}\n{printed}"));
    assert!(
        p.structurally_eq(&again),
        "{label}: tree changed\n{printed}"
    );
    assert_eq!(notation(p), notation(&again), "{label}");
    assert_eq!(
        print(&again).unwrap(),
        printed,
        "{label}: printing is not stable"
    );
}

#[test]
fn corpus() {
    let root = fixtures();
    let mut corpus: BTreeMap<String, String> = BTreeMap::new();
    for dir in ["projects", "census", "golden/refactor"] {
        for (path, text) in files_with(&root.join(dir), &["js"]) {
            corpus.insert(format!("{dir}/{path}"), text);
        }
    }
    assert!(corpus.len() >= 50, "only {} files", corpus.len());
    for (path, text) in &corpus {
        let p = parse_str(text).unwrap_or_else(|e| panic!("{path}: {e}"));
        round_trip(path, &p);
    }
    // Classifier samples may use syntax outside the supported subset; those
    // must fail cleanly, the rest must round-trip.
    for (path, text) in files_with(&root.join("classifier"), &["js"]) {
        if let Ok(p) = parse_str(&text) {
            round_trip(&path, &p);
        }
    }
}

const NAMES: &[&str] = &["a", "b", "c", "foo", "_x", "$y", "obj", "mod_a"];
/// Property names after a dot may be reserved words.
const PROPS: &[&str] = &[
    "x", "length", "default", "class", "new", "if", "toString", "$p", "_q",
];

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(NAMES).prop_map(String::from)
}

fn e(kind: ExprKind) -> Expr {
    Expr::synth(kind)
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        ident().prop_map(Expr::ident),
        prop::sample::select(&["0", "1", "42", "3.5", "0.25", "1e9", "0x1f"][..])
            .prop_map(|n| e(ExprKind::Number(n.into()))),
        prop::sample::select(
            &[
                "",
                "s",
                "it's",
                "a\"b",
                "line\nbreak",
                "tab\t",
                "back\\slash",
                "é"
            ][..]
        )
        .prop_map(Expr::str_lit),
        any::<bool>().prop_map(|b| e(ExprKind::Bool(b))),
        Just(Expr::null()),
        Just(e(ExprKind::This)),
        prop::sample::select(&["/a+/g", "/[/]x/", "/\\d/i"][..])
            .prop_map(|r| e(ExprKind::Regex(r.into()))),
    ]
}

fn target(inner: BoxedStrategy<Expr>) -> impl Strategy<Value = Expr> {
    prop_oneof![
        ident().prop_map(Expr::ident),
        (inner.clone(), prop::sample::select(PROPS)).prop_map(|(o, p)| Expr::dot(o, p)),
        (inner.clone(), inner).prop_map(|(o, k)| e(ExprKind::Member {
            object: Box::new(o),
            property: MemberProp::Bracket(Box::new(k)),
        })),
    ]
}

const BINARY: &[BinaryOp] = &[
    BinaryOp::Or,
    BinaryOp::And,
    BinaryOp::BitOr,
    BinaryOp::BitXor,
    BinaryOp::BitAnd,
    BinaryOp::Eq,
    BinaryOp::StrictNotEq,
    BinaryOp::Lt,
    BinaryOp::GtEq,
    BinaryOp::In,
    BinaryOp::InstanceOf,
    BinaryOp::Shl,
    BinaryOp::UShr,
    BinaryOp::Add,
    BinaryOp::Sub,
    BinaryOp::Mul,
    BinaryOp::Div,
    BinaryOp::Mod,
];
const UNARY: &[UnaryOp] = &[
    UnaryOp::Neg,
    UnaryOp::Plus,
    UnaryOp::Not,
    UnaryOp::BitNot,
    UnaryOp::TypeOf,
    UnaryOp::Void,
    UnaryOp::Delete,
];
const ASSIGN: &[AssignOp] = &[
    AssignOp::Assign,
    AssignOp::Add,
    AssignOp::Sub,
    AssignOp::UShr,
    AssignOp::BitXor,
];

fn function_expr(body: BoxedStrategy<Stmt>) -> impl Strategy<Value = Expr> {
    (
        prop::option::of(ident()),
        prop::collection::btree_set(ident(), 0..3),
        prop::collection::vec(body, 0..3),
    )
        .prop_map(|(name, params, body)| {
            e(ExprKind::Function(Box::new(Function {
                name,
                params: params.into_iter().collect(),
                directives: Vec::new(),
                body,
                span: None,
            })))
        })
}

fn expr() -> BoxedStrategy<Expr> {
    leaf()
        .prop_recursive(5, 48, 4, |inner| {
            let simple_stmt = inner
                .clone()
                .prop_map(|x| Stmt::synth(StmtKind::Return(Some(x))))
                .boxed();
            prop_oneof![
                target(inner.clone()),
                (inner.clone(), prop::collection::vec(inner.clone(), 0..3)).prop_map(
                    |(c, args)| e(ExprKind::Call {
                        callee: Box::new(c),
                        args
                    })
                ),
                (inner.clone(), prop::collection::vec(inner.clone(), 0..3)).prop_map(
                    |(c, args)| e(ExprKind::New {
                        callee: Box::new(c),
                        args
                    })
                ),
                (
                    prop::sample::select(ASSIGN),
                    target(inner.clone()),
                    inner.clone()
                )
                    .prop_map(|(op, t, v)| e(ExprKind::Assign {
                        op,
                        target: Box::new(t),
                        value: Box::new(v),
                    })),
                (prop::sample::select(BINARY), inner.clone(), inner.clone()).prop_map(
                    |(op, l, r)| e(ExprKind::Binary {
                        op,
                        left: Box::new(l),
                        right: Box::new(r),
                    })
                ),
                (prop::sample::select(UNARY), inner.clone()).prop_map(|(op, a)| e(
                    ExprKind::Unary {
                        op,
                        arg: Box::new(a)
                    }
                )),
                (any::<bool>(), any::<bool>(), target(inner.clone())).prop_map(
                    |(inc, prefix, a)| e(ExprKind::Update {
                        op: if inc { UpdateOp::Incr } else { UpdateOp::Decr },
                        prefix,
                        arg: Box::new(a),
                    })
                ),
                (inner.clone(), inner.clone(), inner.clone()).prop_map(|(t, c, a)| e(
                    ExprKind::Conditional {
                        test: Box::new(t),
                        consequent: Box::new(c),
                        alternate: Box::new(a),
                    }
                )),
                prop::collection::vec(inner.clone(), 2..4).prop_map(|xs| e(ExprKind::Sequence(xs))),
                prop::collection::vec(prop::option::of(inner.clone()), 0..4)
                    .prop_map(|xs| e(ExprKind::Array(xs))),
                prop::collection::vec((key(), inner.clone()), 0..3).prop_map(|ps| e(
                    ExprKind::Object(
                        ps.into_iter()
                            .map(|(key, value)| Property {
                                key,
                                value,
                                span: None
                            })
                            .collect()
                    )
                )),
                function_expr(simple_stmt),
            ]
        })
        .boxed()
}

fn key() -> impl Strategy<Value = PropKey> {
    prop_oneof![
        prop::sample::select(PROPS).prop_map(|p| PropKey::Ident(p.into())),
        prop::sample::select(&["a-b", "two words", ""][..]).prop_map(|s| PropKey::Str(s.into())),
        prop::sample::select(&["0", "7", "1.5"][..]).prop_map(|n| PropKey::Num(n.into())),
    ]
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let leaf_stmt = prop_oneof![
        expr().prop_map(Stmt::expr),
        (ident(), prop::option::of(expr())).prop_map(|(n, init)| Stmt::var(n, init)),
        Just(Stmt::synth(StmtKind::Empty)),
    ];
    leaf_stmt.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (expr(), inner.clone(), prop::option::of(inner.clone())).prop_map(|(test, c, a)| {
                Stmt::synth(StmtKind::If {
                    test,
                    consequent: Box::new(Stmt::synth(StmtKind::Block(vec![c]))),
                    alternate: a.map(|a| Box::new(Stmt::synth(StmtKind::Block(vec![a])))),
                })
            }),
            prop::collection::vec(inner.clone(), 0..3)
                .prop_map(|b| Stmt::synth(StmtKind::Block(b))),
            (expr(), inner.clone()).prop_map(|(test, body)| Stmt::synth(StmtKind::While {
                test,
                body: Box::new(body)
            })),
            (
                ident(),
                prop::collection::btree_set(ident(), 0..3),
                prop::collection::vec(inner, 0..3)
            )
                .prop_map(|(name, params, body)| Stmt::synth(StmtKind::Function(
                    Function {
                        name: Some(name),
                        params: params.into_iter().collect(),
                        directives: Vec::new(),
                        body,
                        span: None,
                    }
                ))),
        ]
    })
}

fn program() -> impl Strategy<Value = Program> {
    prop::collection::vec(stmt(), 1..5).prop_map(Program::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn generated_programs(p in program()) {
        round_trip("generated", &p);
    }

    #[test]
    fn generated_member_chains(
        base in ident(),
        chain in prop::collection::vec((any::<bool>(), prop::sample::select(PROPS)), 1..8),
    ) {
        let mut src = base.clone();
        for (bracket, name) in &chain {
            if *bracket {
                src.push_str(&format!("[\"{name}\"]"));
            } else {
                src.push_str(&format!(".{name}"));
            }
        }
        let p = parse_str(&format!("{src} = {src};")).unwrap();
        let (dot, brackets) = notation(&p);
        prop_assert_eq!(brackets, 2 * chain.iter().filter(|(b, _)| *b).count());
        prop_assert_eq!(dot.len(), 2 * chain.iter().filter(|(b, _)| !*b).count());
        round_trip(&src, &p);
        prop_assert!(print(&p).unwrap().starts_with(&src));
    }
}
