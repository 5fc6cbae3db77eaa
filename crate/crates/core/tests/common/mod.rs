#![allow(dead_code)]

use grassmann_core::poly::{frac, Alphabet};
use grassmann_core::symmetric::{forms_of, schur, Partition};
use grassmann_core::{MultiPoly, Rational, VarId};
use rand::Rng;

pub fn xs(k: usize) -> Vec<MultiPoly> {
    forms_of(&VarId::range(Alphabet::X, k as u32))
}

pub fn ys(k: usize) -> Vec<MultiPoly> {
    forms_of(&VarId::range(Alphabet::Y, k as u32))
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// Partitions with at most `rows` parts and size at most `max_size`.
pub fn partitions_up_to(rows: usize, max_size: u64) -> Vec<Partition> {
    fn go(rows: usize, cap: u32, left: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).unwrap());
        if prefix.len() == rows {
            return;
        }
        for part in 1..=cap.min(left as u32) {
            prefix.push(part);
            go(rows, part, left - u64::from(part), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, max_size as u32, max_size, &mut Vec::new(), &mut out);
    out
}

/// `Σ c_λ s_λ(x1..xk)` over a few random partitions of size at most `max_size`.
pub fn random_schur_combination<R: Rng>(rng: &mut R, k: usize, max_size: u64) -> MultiPoly {
    let shapes = partitions_up_to(k, max_size);
    let alphabet = xs(k);
    let mut acc = MultiPoly::zero();
    for _ in 0..3 {
        let lambda = &shapes[rng.gen_range(0..shapes.len())];
        acc += &schur(lambda, &alphabet)
            .unwrap()
            .scale(&small_rational(rng));
    }
    acc
}

/// `Σ c s_λ(x) s_μ(y)` with `|λ| + |μ|` at most `max_size`.
pub fn random_double_schur_combination<R: Rng>(
    rng: &mut R,
    k: usize,
    rest: usize,
    max_size: u64,
) -> MultiPoly {
    let x_shapes = partitions_up_to(k, max_size);
    let (xa, ya) = (xs(k), ys(rest));
    let mut acc = MultiPoly::zero();
    for _ in 0..3 {
        let lambda = &x_shapes[rng.gen_range(0..x_shapes.len())];
        let y_shapes = partitions_up_to(rest, max_size - lambda.size());
        let mu = &y_shapes[rng.gen_range(0..y_shapes.len())];
        let term = &schur(lambda, &xa).unwrap() * &schur(mu, &ya).unwrap();
        acc += &term.scale(&small_rational(rng));
    }
    acc
}

/// Random symmetric polynomial in `x1..xk` with every partial degree at most `bound`.
pub fn random_bounded_symmetric<R: Rng>(rng: &mut R, k: usize, bound: u32) -> MultiPoly {
    let shapes: Vec<Partition> = partitions_up_to(k, u64::from(bound) * k as u64)
        .into_iter()
        .filter(|p| p.part(0) <= bound)
        .collect();
    let alphabet = xs(k);
    let mut acc = MultiPoly::zero();
    for _ in 0..4 {
        let lambda = &shapes[rng.gen_range(0..shapes.len())];
        acc += &schur(lambda, &alphabet)
            .unwrap()
            .scale(&small_rational(rng));
    }
    acc
}

/// Argument lists covering every subcommand, run by the determinism checks.
pub const CLI_EXAMPLES: &[&[&str]] = &[
    &["integrate", "-k", "1", "-n", "2", "c(1,Q)"],
    &["integrate", "-k", "2", "-n", "4", "c(1,Q)^4"],
    &[
        "integrate",
        "-k",
        "2",
        "-n",
        "4",
        "euler(sym(3,dual(S)))",
        "--oracle",
        "3",
    ],
    &[
        "integrate",
        "-k",
        "2",
        "-n",
        "5",
        "euler(sym(5,dual(S)))",
        "--oracle",
        "4",
        "--json",
    ],
    &[
        "integrate",
        "-k",
        "2",
        "-n",
        "5",
        "schur([2,1],Q)*schur([2,1],Q)",
        "--oracle",
        "2",
    ],
    &["integrate", "-k", "2", "-n", "4", "c(1,Q)^5"],
    &["expand", "-k", "2", "-n", "4", "euler(sym(3,dual(S)))"],
    &["coeff", "(x1 + x2)^3", "x1^2*x2"],
    &["identity", "power-sum", "-n", "4", "-m", "6"],
    &["identity", "prop1", "-n", "3", "--poly", "z^2 - 3*z"],
    &[
        "identity",
        "main",
        "-k",
        "2",
        "-n",
        "4",
        "--poly",
        "x1^2*x2^2 + x1 + x2",
    ],
    &[
        "identity",
        "double",
        "-k",
        "1",
        "-n",
        "3",
        "--poly",
        "y1*y2 + 2*x1^2",
    ],
    &[
        "identity",
        "chen-louck",
        "-k",
        "2",
        "-n",
        "5",
        "--poly",
        "x1^3*x2^3 - x1*x2",
    ],
];
