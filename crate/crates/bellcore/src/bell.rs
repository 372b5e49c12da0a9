//! Bell expressions, exact evaluation via `Tr(rho * B)`, and analytic
//! cross-check formulas.
//!
//! Four inequalities are covered:
//!
//! - Chsh2:       beta = -<A0 B0> - <A0 B1> - <A1 B0> + <A1 B1>, bound 2
//! - Mermin3:     mu = <A1 B2 B3> + <B1 A2 B3> + <B1 B2 A3> - <A1 A2 A3>, bound 2
//! - Mk4:         kappa, the sixteen-term four-qubit extension, bound 4
//! - QutritChsh:  beta = <AABB> summed CHSH-style over setting pairs, bound 2,
//!                with the same observable measured on photons 1,2 (A) and on
//!                photons 3,4 (B)
//!
//! `evaluate` assembles each term as a tensor product and takes the trace;
//! `closed_form` provides the independent trigonometric expressions for the
//! same quantities so the two paths can check each other.

use crate::eig::hermitian_eigenvalues;
use crate::observables::{
    chsh_observables, fourth_qubit_observables, lift, xy_observables, AnglePair, Observable,
};
use crate::states::{DensityMatrix, NoiseKind, Purity};
use crate::{Error, Scalar};

/// Slack added to the classical bound before declaring a violation.
pub const VIOLATION_EPSILON: f64 = 1e-12;

/// Which Bell inequality is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    Chsh2,
    Mermin3,
    Mk4,
    QutritChsh,
}

impl BellKind {
    /// Number of qubits the corresponding states live on.
    pub fn n_qubits(self) -> usize {
        match self {
            BellKind::Chsh2 => 2,
            BellKind::Mermin3 => 3,
            BellKind::Mk4 => 4,
            BellKind::QutritChsh => 4,
        }
    }

    /// Local-hidden-variable bound on the expression.
    pub fn classical_bound<T: Scalar>(self) -> T {
        match self {
            BellKind::Mk4 => T::lit(4.0),
            _ => T::lit(2.0),
        }
    }
}

/// One correlation term: a sign and one observable pick (0 or 1) per qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub picks: Vec<u8>,
}

/// A signed sum of correlation terms with its classical bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BellExpression<T> {
    kind: BellKind,
    terms: Vec<Term>,
    classical_bound: T,
}

impl<T: Scalar> BellExpression<T> {
    /// The inequality this expression belongs to.
    pub fn kind(&self) -> BellKind {
        self.kind
    }

    /// Number of qubits each term addresses.
    pub fn n_qubits(&self) -> usize {
        self.kind.n_qubits()
    }

    /// The signed correlation terms.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Local-hidden-variable bound.
    pub fn classical_bound(&self) -> T {
        self.classical_bound
    }
}

/// A computed expression value together with its violation verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellValue<T> {
    pub value: T,
    pub violated: bool,
}

impl<T: Scalar> BellValue<T> {
    fn new(value: T, bound: T) -> Self {
        BellValue {
            value,
            violated: value.abs() > bound + T::lit(VIOLATION_EPSILON),
        }
    }
}

/// The sixteen Mermin-Klyshko words in printed order; signs are positive
/// exactly for the words with one or two B factors.
const MK4_TERMS: [(i8, &str); 16] = [
    (1, "BAAA"),
    (1, "ABAA"),
    (1, "AABA"),
    (1, "AAAB"),
    (1, "BAAB"),
    (1, "ABAB"),
    (1, "AABB"),
    (-1, "BBBB"),
    (1, "ABBA"),
    (1, "BABA"),
    (1, "BBAA"),
    (-1, "AAAA"),
    (-1, "ABBB"),
    (-1, "BABB"),
    (-1, "BBAB"),
    (-1, "BBBA"),
];

fn word_term(sign: i8, word: &str) -> Term {
    Term {
        sign,
        picks: word
            .bytes()
            .map(|b| match b {
                b'A' | b'0' => 0,
                b'B' | b'1' => 1,
                _ => unreachable!("term words use A/B or 0/1"),
            })
            .collect(),
    }
}

/// Builds the term list for the selected inequality.
pub fn make_expression<T: Scalar>(kind: BellKind) -> BellExpression<T> {
    let terms: Vec<Term> = match kind {
        // beta = -<A0 B0> - <A0 B1> - <A1 B0> + <A1 B1>; picks are the
        // setting subscripts (A index, B index).
        BellKind::Chsh2 => [(-1, "00"), (-1, "01"), (-1, "10"), (1, "11")]
            .iter()
            .map(|&(s, w)| word_term(s, w))
            .collect(),
        // mu = <A1 B2 B3> + <B1 A2 B3> + <B1 B2 A3> - <A1 A2 A3>.
        BellKind::Mermin3 => [(1, "ABB"), (1, "BAB"), (1, "BBA"), (-1, "AAA")]
            .iter()
            .map(|&(s, w)| word_term(s, w))
            .collect(),
        BellKind::Mk4 => MK4_TERMS.iter().map(|&(s, w)| word_term(s, w)).collect(),
        // beta = <A0A0 B0B0> + <A0A0 B1B1> + <A1A1 B0B0> - <A1A1 B1B1>;
        // photons 1,2 share the A setting and photons 3,4 the B setting.
        BellKind::QutritChsh => [(1, ("00")), (1, "01"), (1, "10"), (-1, "11")]
            .iter()
            .map(|&(s, w)| Term {
                sign: s,
                picks: {
                    let a = (w.as_bytes()[0] - b'0') as u8;
                    let b = (w.as_bytes()[1] - b'0') as u8;
                    vec![a, a, b, b]
                },
            })
            .collect(),
    };
    BellExpression {
        kind,
        terms,
        classical_bound: kind.classical_bound(),
    }
}

/// The two observable choices available at each qubit site.
pub(crate) fn site_observables<T: Scalar>(
    kind: BellKind,
    angles: &AnglePair<T>,
) -> Vec<[Observable<T>; 2]> {
    match kind {
        BellKind::Chsh2 => {
            let (a0, a1, b0, b1) = chsh_observables(angles);
            vec![[a0, a1], [b0, b1]]
        }
        BellKind::Mermin3 => {
            let (a, b) = xy_observables(angles);
            vec![[a.clone(), b.clone()], [a.clone(), b.clone()], [a, b]]
        }
        BellKind::Mk4 => {
            let (a, b) = xy_observables(angles);
            let (a4, b4) = fourth_qubit_observables(angles);
            vec![[a.clone(), b.clone()], [a.clone(), b.clone()], [a, b], [a4, b4]]
        }
        BellKind::QutritChsh => {
            let (a0, a1, b0, b1) = chsh_observables(angles);
            vec![
                [a0.clone(), a1.clone()],
                [a0, a1],
                [b0.clone(), b1.clone()],
                [b0, b1],
            ]
        }
    }
}

/// Evaluates the expression exactly on a density matrix at the given angles.
pub fn evaluate<T: Scalar>(
    expr: &BellExpression<T>,
    rho: &DensityMatrix<T>,
    angles: &AnglePair<T>,
) -> Result<BellValue<T>, Error> {
    let n = expr.n_qubits();
    if rho.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: 1 << rho.n_qubits(),
        });
    }
    let site_obs = site_observables(expr.kind, angles);
    let mut value = T::zero();
    for term in &expr.terms {
        let mut op = lift(&site_obs[0][term.picks[0] as usize], 0, n)
            .expect("site 0 always in range");
        for (site, &pick) in term.picks.iter().enumerate().skip(1) {
            op = &op * &lift(&site_obs[site][pick as usize], site, n).expect("site in range");
        }
        let corr = rho.matrix().trace_product(&op).re;
        value = if term.sign > 0 { value + corr } else { value - corr };
    }
    Ok(BellValue::new(value, expr.classical_bound))
}

/// Analytic value of the expression for each state family and noise kind.
///
/// The Chsh2 and QutritChsh forms are specific to the noise kind; the GHZ
/// families are noise-independent because every correlation term has zero
/// diagonal in the computational basis, so only the pure part contributes.
pub fn closed_form<T: Scalar>(
    kind: BellKind,
    noise: NoiseKind,
    p: Purity<T>,
    angles: &AnglePair<T>,
) -> T {
    let (t, f) = (angles.theta(), angles.phi());
    let p = p.value();
    let one = T::one();
    let two = T::lit(2.0);
    match (kind, noise) {
        (BellKind::Chsh2, NoiseKind::White) => {
            two * p
                * (f.cos() * (t.sin() * t.sin() + t.cos())
                    - f.sin() * (t.cos() - one) * t.sin())
        }
        (BellKind::Chsh2, NoiseKind::Colored) => {
            f.cos() * ((one + p) * t.sin() * t.sin() + two * t.cos())
                - (one + p) * f.sin() * (t.cos() - one) * t.sin()
        }
        (BellKind::Mermin3, _) => {
            p * ((t + t + t).cos() - T::lit(3.0) * (t + f + f).cos())
        }
        (BellKind::Mk4, _) => {
            let q = T::FRAC_PI_4();
            let four = T::lit(4.0);
            p * ((four * t + q).cos() - four * (T::lit(3.0) * t + f + q).cos()
                - T::lit(6.0) * (two * (t + f) + q).cos()
                + four * (t + T::lit(3.0) * f + q).cos()
                + (four * f + q).cos())
        }
        (BellKind::QutritChsh, NoiseKind::White) => {
            two * p / T::lit(3.0)
                * (two * ((two * (t - f)).cos() + f.cos() * f.cos())
                    - (four_t_minus_2f(t, f)).cos())
        }
        (BellKind::QutritChsh, NoiseKind::Colored) => {
            let c4t2f = (four_t_minus_2f(t, f)).cos();
            let c2t2f = (two * (t - f)).cos();
            let c2f = (f + f).cos();
            let c2t2fp = (two * (t + f)).cos();
            (T::lit(24.0) - T::lit(8.0) * p - (T::lit(3.0) + T::lit(13.0) * p) * c4t2f
                + (T::lit(9.0) + T::lit(23.0) * p) * c2t2f
                + (T::lit(15.0) + p) * c2f
                + (T::lit(3.0) - T::lit(3.0) * p) * c2t2fp)
                / T::lit(24.0)
        }
    }
}

fn four_t_minus_2f<T: Scalar>(t: T, f: T) -> T {
    let two = T::lit(2.0);
    two * (t + t - f)
}

/// Peres criterion: entangled iff the partial transpose over `party` has a
/// negative eigenvalue (below `-1e-10`).
pub fn peres_entangled<T: Scalar>(
    rho: &DensityMatrix<T>,
    party: &[usize],
) -> Result<bool, Error> {
    let pt = rho.matrix().partial_transpose(rho.n_qubits(), party)?;
    let eigs = hermitian_eigenvalues(&pt)?;
    Ok(eigs[0] < T::lit(-1e-10))
}
