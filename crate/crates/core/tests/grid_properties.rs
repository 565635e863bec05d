mod common;

use formalize_core::grid::{
    check_grid_formula, eval_extension, holds_atom, GridCoord, GridExercise, SquareSet,
};
use formalize_core::logic::{parse, Dialect, Formula, Pred};
use formalize_core::Category;
use rand::RngExt;

use common::{naive_extension, random_constants, random_grid_formula, random_square, rng};

#[test]
fn matches_brute_force_on_shallow_formulas() {
    let mut r = rng(7);
    for _ in 0..60 {
        let consts = random_constants(&mut r);
        let f = random_grid_formula(&mut r, 6, 1, 'x', &['u', 'a', 'b']);
        let fast = eval_extension(&consts, &f, 'x', 3).unwrap();
        assert_eq!(fast, naive_extension(&consts, &f, 'x'), "{f:?}");
    }
}

#[test]
fn de_morgan_on_sets() {
    let mut r = rng(11);
    for _ in 0..100 {
        let consts = random_constants(&mut r);
        let p = random_grid_formula(&mut r, 4, 1, 'x', &['u', 'a', 'b']);
        let q = random_grid_formula(&mut r, 4, 1, 'x', &['u', 'a', 'b']);
        let lhs = Formula::not(Formula::and(p.clone(), q.clone()));
        let rhs = Formula::or(Formula::not(p.clone()), Formula::not(q.clone()));
        assert_eq!(
            eval_extension(&consts, &lhs, 'x', 3).unwrap(),
            eval_extension(&consts, &rhs, 'x', 3).unwrap()
        );
        let ep = eval_extension(&consts, &p, 'x', 3).unwrap();
        assert_eq!(
            eval_extension(&consts, &Formula::not(p), 'x', 3).unwrap(),
            ep.complement()
        );
    }
}

#[test]
fn atom_symmetries() {
    let mut r = rng(3);
    for _ in 0..5000 {
        let (a, b, x, y) = (
            random_square(&mut r),
            random_square(&mut r),
            random_square(&mut r),
            random_square(&mut r),
        );
        assert_eq!(
            holds_atom(Pred::Nachbar, &[a, b]),
            holds_atom(Pred::Nachbar, &[b, a])
        );
        assert_eq!(
            holds_atom(Pred::Rechts, &[a, b]),
            holds_atom(Pred::Links, &[b, a])
        );
        assert_eq!(
            holds_atom(Pred::Ueber, &[a, b]),
            holds_atom(Pred::Unter, &[b, a])
        );
        let d = holds_atom(Pred::DistEq, &[a, b, x, y]);
        assert_eq!(d, holds_atom(Pred::DistEq, &[x, y, a, b]));
        assert_eq!(d, holds_atom(Pred::DistEq, &[b, a, x, y]));
    }
}

#[test]
fn no_square_right_of_the_right_edge() {
    let consts = random_constants(&mut rng(0));
    let f = parse("Ey:rechts(x,y)", Dialect::Grid).unwrap();
    let s = eval_extension(&consts, &f, 'x', 3).unwrap();
    assert_eq!(s.len(), 420);
    assert!(s.iter().all(|sq| sq.col() != 10));
}

#[test]
fn correct_iff_no_red_and_no_yellow() {
    let mut r = rng(19);
    for _ in 0..200 {
        let target: SquareSet = (0..r.random_range(0..30))
            .map(|_| random_square(&mut r))
            .collect();
        let ex = GridExercise::new("r", "random", target).with_constant('a', random_square(&mut r));
        let f = random_grid_formula(&mut r, 5, 1, 'x', &['u', 'a']);
        if f.free_symbols()
            .into_iter()
            .filter(|c| !ex.constants.contains_key(c))
            .count()
            != 1
        {
            continue;
        }
        let v = check_grid_formula(&ex, &f);
        if let Some(c) = v.coloring {
            assert_eq!(
                v.category == Category::Correct,
                c.red.is_empty() && c.yellow.is_empty()
            );
        }
    }
}

#[test]
fn quantifier_over_a_conjunction() {
    let ex = GridExercise::new("t", "t", [GridCoord::CENTER].into_iter().collect());
    let f = parse("Ay:(x=u&~rechts(y,y))", Dialect::Grid).unwrap();
    assert_eq!(check_grid_formula(&ex, &f).category, Category::Correct);
}
