//! Randomized exact verification of every identity the library relies on.
//!
//! Identities are [`Identity`] trait objects in an [`IdentityRegistry`]. The
//! operations under test are reached through a [`Calculus`] trait object so
//! that a deliberately broken implementation can be swapped in to check that
//! the suite actually catches it.
//!
//! Each identity gets its own proptest runner seeded from the user seed and
//! the identity's position, so results are reproducible regardless of which
//! thread finishes first. Failing inputs are shrunk before being reported.

use std::fmt::{self, Debug};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rayon::prelude::*;

use crate::bundles::VirtualBundle;
use crate::chowring::{chern_power, ChowClass, LineBundle};
use crate::correspondence::{Correspondence, OperatorMatrix};
use crate::hypersurface::{component_transform, Hypersurface, SignConvention, SingularScheme};

/// The operations whose correctness the suite checks.
pub trait Calculus: Send + Sync {
    fn name(&self) -> &'static str;

    fn dual(&self, a: &ChowClass) -> ChowClass {
        a.dual()
    }

    fn tensor_line(&self, a: &ChowClass, line: LineBundle) -> ChowClass {
        a.tensor_line(line)
    }

    fn involution(&self, a: &ChowClass, n: i64, line: LineBundle) -> ChowClass {
        &chern_power(a.ambient_dim(), line, n) * &self.tensor_line(&self.dual(a), line)
    }
}

/// The library's own operations.
pub struct Exact;

impl Calculus for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }
}

/// Mutant whose dual negates even codimensions instead of odd ones.
pub struct DualSignFlip;

impl Calculus for DualSignFlip {
    fn name(&self) -> &'static str {
        "dual-sign-flip"
    }

    fn dual(&self, a: &ChowClass) -> ChowClass {
        -a.dual()
    }
}

pub fn calculus_names() -> &'static [&'static str] {
    &["exact", "dual-sign-flip"]
}

pub fn calculus_by_name(name: &str) -> Option<Arc<dyn Calculus>> {
    match name {
        "exact" => Some(Arc::new(Exact)),
        "dual-sign-flip" => Some(Arc::new(DualSignFlip)),
        _ => None,
    }
}

pub struct Context {
    pub max_dim: usize,
    pub calculus: Arc<dyn Calculus>,
}

pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;

    /// Smallest ambient dimension the identity makes sense for.
    fn min_dim(&self) -> usize {
        0
    }

    /// Runs the randomized check; `Err` carries the shrunk counterexample.
    fn check(&self, ctx: &Context, runner: &mut TestRunner) -> Result<(), String>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed { cases: u32 },
    Vacuous { reason: String },
    Failed { counterexample: String },
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_dim: usize,
    pub cases: u32,
    pub calculus: Arc<dyn Calculus>,
}

impl Debug for dyn Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl VerifyConfig {
    pub fn new(seed: u64, max_dim: usize) -> Self {
        VerifyConfig { seed, max_dim, cases: 256, calculus: Arc::new(Exact) }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub max_dim: usize,
    pub cases: u32,
    pub calculus: &'static str,
    pub results: Vec<(&'static str, Outcome)>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        !self.results.iter().any(|(_, o)| matches!(o, Outcome::Failed { .. }))
    }

    fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.results.iter().filter(|(_, o)| pred(o)).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify seed={} max_dim={} cases={} calculus={}",
            self.seed, self.max_dim, self.cases, self.calculus
        )?;
        for (name, outcome) in &self.results {
            match outcome {
                Outcome::Passed { cases } => writeln!(f, "PASS    {name} ({cases} cases)")?,
                Outcome::Vacuous { reason } => writeln!(f, "VACUOUS {name} ({reason})")?,
                Outcome::Failed { counterexample } => {
                    writeln!(f, "FAIL    {name}")?;
                    writeln!(f, "        counterexample: {counterexample}")?;
                }
            }
        }
        write!(
            f,
            "summary: {} passed, {} vacuous, {} failed",
            self.count(|o| matches!(o, Outcome::Passed { .. })),
            self.count(|o| matches!(o, Outcome::Vacuous { .. })),
            self.count(|o| matches!(o, Outcome::Failed { .. })),
        )
    }
}

#[derive(Clone, Default)]
pub struct IdentityRegistry {
    entries: Vec<Arc<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, identity: Arc<dyn Identity>) {
        self.entries.push(identity);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn Identity>> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn builtin() -> Self {
        let mut reg = Self::new();
        let all: Vec<Arc<dyn Identity>> = vec![
            Arc::new(InvolutionRoundtrip),
            Arc::new(DualInvolutive),
            Arc::new(TensorActionLaw),
            Arc::new(Linearity),
            Arc::new(UnitInverse),
            Arc::new(TrivialLineIsDual),
            Arc::new(BundleDualFormula),
            Arc::new(BundleTensorFormula),
            Arc::new(ChernTotalMultiplicative),
            Arc::new(MilnorAlphaDuality),
            Arc::new(CsmDuality),
            Arc::new(AluffiDuality),
            Arc::new(ClassConsistency),
            Arc::new(ComponentFormulas),
            Arc::new(SmoothDegeneracy),
            Arc::new(CorrespondenceOperator),
            Arc::new(CorrespondenceInvolutive),
            Arc::new(MatrixBijection),
            Arc::new(CompositionFunctoriality),
            Arc::new(PushforwardBilinearity),
        ];
        for identity in all {
            reg.register(identity);
        }
        reg
    }

    pub fn run(&self, config: &VerifyConfig) -> VerifyReport {
        let ctx = Context { max_dim: config.max_dim, calculus: config.calculus.clone() };
        let results = self
            .entries
            .par_iter()
            .enumerate()
            .map(|(index, identity)| {
                let outcome = if config.max_dim < identity.min_dim() {
                    Outcome::Vacuous {
                        reason: format!(
                            "requires N >= {}, max_dim = {}",
                            identity.min_dim(),
                            config.max_dim
                        ),
                    }
                } else {
                    let mut runner = seeded_runner(config.seed, index as u64, config.cases);
                    match identity.check(&ctx, &mut runner) {
                        Ok(()) => Outcome::Passed { cases: config.cases },
                        Err(counterexample) => Outcome::Failed { counterexample },
                    }
                };
                (identity.name(), outcome)
            })
            .collect();
        VerifyReport {
            seed: config.seed,
            max_dim: config.max_dim,
            cases: config.cases,
            calculus: config.calculus.name(),
            results,
        }
    }
}

/// Runs the built-in identity suite.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    IdentityRegistry::builtin().run(config)
}

fn seeded_runner(seed: u64, stream: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&stream.to_le_bytes());
    bytes[16..24].copy_from_slice(&0x6368_6f77_6361_6c63u64.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        max_shrink_iters: 4096,
        max_local_rejects: 65_536,
        max_global_rejects: 1024,
        fork: false,
        timeout: 0,
        verbose: 0,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn run_property<S>(
    runner: &mut TestRunner,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    runner.run(&strategy, |v| test(v).map_err(TestCaseError::fail)).map_err(|e| match e {
        TestError::Fail(reason, value) => format!("{reason}; minimal input: {value:?}"),
        TestError::Abort(reason) => format!("aborted: {reason}"),
    })
}

fn expect_eq(what: &str, lhs: &ChowClass, rhs: &ChowClass) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: `{lhs}` != `{rhs}`"))
    }
}

// Strategies. Inputs stay as plain integers so counterexamples print readably.

fn coeff_vec(len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-9i64..=9, len)
}

fn class_of_dim(n: usize) -> impl Strategy<Value = Vec<i64>> {
    coeff_vec(n + 1)
}

fn any_class(max_dim: usize) -> impl Strategy<Value = Vec<i64>> {
    (0..=max_dim).prop_flat_map(class_of_dim)
}

fn class_pair(max_dim: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (0..=max_dim).prop_flat_map(|n| (class_of_dim(n), class_of_dim(n)))
}

fn roots() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), 0..=5)
}

fn twist_n() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn twist_m() -> impl Strategy<Value = i64> {
    -3i64..=3
}

#[derive(Clone, Debug)]
enum ModelCase {
    Smooth,
    Points(u64),
    Linear(usize),
    Explicit(Vec<i64>),
}

#[derive(Clone, Debug)]
struct HypersurfaceCase {
    ambient: usize,
    degree: i64,
    model: ModelCase,
    n: i64,
}

impl HypersurfaceCase {
    fn build(&self) -> Hypersurface {
        let model = match &self.model {
            ModelCase::Smooth => SingularScheme::Smooth,
            ModelCase::Points(r) => SingularScheme::Points(*r),
            ModelCase::Linear(k) => SingularScheme::Linear(*k),
            ModelCase::Explicit(v) => SingularScheme::Explicit(v.iter().copied().map(BigInt::from).collect()),
        };
        Hypersurface::from_model(self.ambient, self.degree, model).expect("strategy yields valid models")
    }
}

fn hypersurface_case(max_dim: usize) -> impl Strategy<Value = HypersurfaceCase> {
    (1..=max_dim.max(1)).prop_flat_map(|ambient| {
        let model = prop_oneof![
            Just(ModelCase::Smooth),
            (1u64..=5).prop_map(ModelCase::Points),
            (0..ambient).prop_map(ModelCase::Linear),
            coeff_vec(ambient).prop_map(|tail| {
                let mut v = vec![0];
                v.extend(tail);
                ModelCase::Explicit(v)
            }),
        ];
        (1i64..=5, model, -4i64..=(ambient as i64 + 3)).prop_map(move |(degree, model, n)| {
            HypersurfaceCase { ambient, degree, model, n }
        })
    })
}

fn grid(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(coeff_vec(n + 1), n + 1)
}

fn to_corr(rows: &[Vec<i64>]) -> Correspondence {
    Correspondence::new(rows.iter().map(|r| r.iter().copied().map(BigInt::from).collect()).collect())
        .expect("square grid")
}

fn class(v: &[i64]) -> ChowClass {
    ChowClass::from_i64s(v)
}

macro_rules! identity {
    ($ty:ident, $name:literal, min_dim = $min:literal, |$ctx:ident, $runner:ident| $body:block) => {
        pub struct $ty;

        impl Identity for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn min_dim(&self) -> usize {
                $min
            }
            fn check(&self, $ctx: &Context, $runner: &mut TestRunner) -> Result<(), String> {
                $body
            }
        }
    };
}

identity!(InvolutionRoundtrip, "involution-roundtrip", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, (any_class(ctx.max_dim), twist_n(), twist_m()), |(a, n, m)| {
        let a = class(&a);
        let l = LineBundle::new(m);
        let twice = calc.involution(&calc.involution(&a, n, l), n, l);
        expect_eq("i(i(a))", &twice, &a)
    })
});

identity!(DualInvolutive, "dual-involutive", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, any_class(ctx.max_dim), |a| {
        let a = class(&a);
        expect_eq("dual(dual(a))", &calc.dual(&calc.dual(&a)), &a)
    })
});

identity!(TensorActionLaw, "tensor-action-law", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, (any_class(ctx.max_dim), twist_m(), twist_m()), |(a, m1, m2)| {
        let a = class(&a);
        let (l, m) = (LineBundle::new(m1), LineBundle::new(m2));
        expect_eq(
            "(a (x) L) (x) M vs a (x) (L (x) M)",
            &calc.tensor_line(&calc.tensor_line(&a, l), m),
            &calc.tensor_line(&a, l.tensor(m)),
        )
    })
});

identity!(Linearity, "linearity", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, (class_pair(ctx.max_dim), twist_n(), twist_m()), |((a, b), n, m)| {
        let (a, b) = (class(&a), class(&b));
        let l = LineBundle::new(m);
        let sum = &a + &b;
        expect_eq("dual", &calc.dual(&sum), &(&calc.dual(&a) + &calc.dual(&b)))?;
        expect_eq("tensor", &calc.tensor_line(&sum, l), &(&calc.tensor_line(&a, l) + &calc.tensor_line(&b, l)))?;
        expect_eq(
            "involution",
            &calc.involution(&sum, n, l),
            &(&calc.involution(&a, n, l) + &calc.involution(&b, n, l)),
        )
    })
});

identity!(UnitInverse, "unit-inverse", min_dim = 0, |ctx, runner| {
    let strategy = (any_class(ctx.max_dim), any::<bool>(), twist_m(), -6i64..=6);
    run_property(runner, strategy, |(mut a, negative, m, k)| {
        a[0] = if negative { -1 } else { 1 };
        let a = class(&a);
        let n = a.ambient_dim();
        let inv = a.unit_inverse().map_err(|e| e.to_string())?;
        expect_eq("a * a^-1", &(&a * &inv), &ChowClass::one(n))?;
        let l = LineBundle::new(m);
        expect_eq("c(L)^k c(L)^-k", &(&l.chern_power(n, k) * &l.chern_power(n, -k)), &ChowClass::one(n))
    })
});

identity!(TrivialLineIsDual, "trivial-line-involution-is-dual", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, (any_class(ctx.max_dim), twist_n()), |(a, n)| {
        let a = class(&a);
        expect_eq("i_{n,O}(a) vs a^dual", &calc.involution(&a, n, LineBundle::TRIVIAL), &a.dual())
    })
});

identity!(BundleDualFormula, "bundle-dual-formula", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    let strategy = (0..=ctx.max_dim).prop_flat_map(|n| (Just(n), roots(), class_of_dim(n)));
    run_property(runner, strategy, |(n, roots, a)| {
        let e = VirtualBundle::new(n, roots);
        let a = class(&a);
        expect_eq(
            "(c(E) a)^dual vs c(E^dual) a^dual",
            &calc.dual(&(&e.chern_total() * &a)),
            &(&e.dual().chern_total() * &calc.dual(&a)),
        )
    })
});

identity!(BundleTensorFormula, "bundle-tensor-formula", min_dim = 0, |ctx, runner| {
    let calc = &ctx.calculus;
    let strategy = (0..=ctx.max_dim).prop_flat_map(|n| (Just(n), roots(), class_of_dim(n), twist_m()));
    run_property(runner, strategy, |(n, roots, a, m)| {
        let e = VirtualBundle::new(n, roots);
        let a = class(&a);
        let l = LineBundle::new(m);
        let lhs = calc.tensor_line(&(&e.chern_total() * &a), l);
        let factor = &e.tensor_line(l).chern_total() * &l.chern_power(n, -e.rank());
        let rhs = &factor * &calc.tensor_line(&a, l);
        expect_eq("(c(E) a) (x) L vs c(E (x) L)/c(L)^r (a (x) L)", &lhs, &rhs)
    })
});

identity!(ChernTotalMultiplicative, "chern-total-multiplicative", min_dim = 0, |ctx, runner| {
    let strategy = (0..=ctx.max_dim).prop_flat_map(|n| (Just(n), roots(), roots()));
    run_property(runner, strategy, |(n, r1, r2)| {
        let e = VirtualBundle::new(n, r1.clone());
        let f = VirtualBundle::new(n, r2.clone());
        let sum = VirtualBundle::new(n, r1.into_iter().chain(r2));
        expect_eq("c(E + F) vs c(E) c(F)", &sum.chern_total(), &(&e.chern_total() * &f.chern_total()))
    })
});

identity!(MilnorAlphaDuality, "milnor-alpha-duality", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, hypersurface_case(ctx.max_dim), |case| {
        let x = case.build();
        let l = x.line_bundle();
        let alpha = x.alpha(case.n);
        let milnor = x.milnor();
        expect_eq("M vs i_n(alpha_n)", &milnor, &calc.involution(&alpha, case.n, l))?;
        expect_eq("alpha_n vs i_n(M)", &alpha, &calc.involution(&milnor, case.n, l))
    })
});

identity!(CsmDuality, "csm-duality", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, hypersurface_case(ctx.max_dim), |case| {
        let x = case.build();
        let l = x.line_bundle();
        let partner = &x.nu(case.n) + &x.alpha(case.n);
        expect_eq("c_SM vs i_n(nu_n + alpha_n)", &x.csm(), &calc.involution(&partner, case.n, l))?;
        expect_eq("nu_n + alpha_n vs i_n(c_SM)", &partner, &calc.involution(&x.csm(), case.n, l))?;
        expect_eq("c_F vs i_n(nu_n)", &x.fulton(), &calc.involution(&x.nu(case.n), case.n, l))
    })
});

identity!(AluffiDuality, "aluffi-duality", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, hypersurface_case(ctx.max_dim), |case| {
        let x = case.build();
        let l = x.line_bundle();
        let alpha = x.alpha(case.n);
        expect_eq("c_A vs i_{n+1}(alpha_n)", &x.aluffi_class(), &calc.involution(&alpha, case.n + 1, l))?;
        expect_eq("alpha_n vs i_{n+1}(c_A)", &alpha, &calc.involution(&x.aluffi_class(), case.n + 1, l))
    })
});

identity!(ClassConsistency, "class-consistency", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, hypersurface_case(ctx.max_dim), |case| {
        let x = case.build();
        let n = x.ambient_dim() as i64;
        let l = x.line_bundle();
        expect_eq("M vs c_SM - c_F", &x.milnor(), &(&x.csm() - &x.fulton()))?;
        expect_eq("Le vs alpha_N", &x.le_class(), &x.alpha(n))?;
        expect_eq("mu vs alpha_{N-1}", &x.mu_class(), &x.alpha(n - 1))?;
        expect_eq(
            "alpha_n vs c(O(X))^{n+1-N} mu",
            &x.alpha(case.n),
            &(&l.chern_power(x.ambient_dim(), case.n + 1 - n) * &x.mu_class()),
        )?;
        expect_eq("M vs i_{N-1}(mu)", &x.milnor(), &calc.involution(&x.mu_class(), n - 1, l))?;
        expect_eq(
            "c_A vs c(O(X)) M",
            &x.aluffi_class(),
            &(&l.chern_power(x.ambient_dim(), 1) * &x.milnor()),
        )
    })
});

identity!(ComponentFormulas, "component-formulas", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, hypersurface_case(ctx.max_dim), |case| {
        let x = case.build();
        let n = x.ambient_dim();
        let d = x.degree();
        let m_from_le = x.milnor_components_from_le(SignConvention::Derived);
        expect_eq("M_k from Le", &m_from_le, &x.milnor())?;
        expect_eq("Le_k from M", &x.le_components_from_milnor(SignConvention::Derived), &x.le_class())?;
        expect_eq("assembly vs i_N", &m_from_le, &calc.involution(&x.le_class(), n as i64, x.line_bundle()))?;
        for conv in [SignConvention::Derived, SignConvention::Paper] {
            let back = component_transform(&component_transform(&x.le_class(), d, conv), d, conv);
            expect_eq("round trip", &back, &x.le_class())?;
        }
        let global = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        expect_eq(
            "printed sign vs (-1)^N derived",
            &x.milnor_components_from_le(SignConvention::Paper),
            &x.milnor().scale(&global),
        )
    })
});

identity!(SmoothDegeneracy, "smooth-degeneracy", min_dim = 1, |ctx, runner| {
    let strategy = (1..=ctx.max_dim.max(1), 1i64..=5);
    run_property(runner, strategy, |(ambient, degree)| {
        let x = Hypersurface::from_model(ambient, degree, SingularScheme::Smooth).map_err(|e| e.to_string())?;
        let zero = ChowClass::zero(ambient);
        expect_eq("M", &x.milnor(), &zero)?;
        expect_eq("Le", &x.le_class(), &zero)?;
        expect_eq("mu", &x.mu_class(), &zero)?;
        expect_eq("c_A", &x.aluffi_class(), &zero)?;
        expect_eq("c_SM vs c_F", &x.csm(), &x.fulton())?;
        if ambient == 2 {
            let chi = BigInt::from(3 * degree - degree * degree);
            if x.euler_characteristic() != chi {
                return Err(format!("plane curve chi {} != {chi}", x.euler_characteristic()));
            }
        }
        Ok(())
    })
});

identity!(CorrespondenceOperator, "correspondence-operator", min_dim = 1, |ctx, runner| {
    let calc = &ctx.calculus;
    run_property(runner, (1..=ctx.max_dim.max(1), twist_n(), twist_m()), |(n_dim, n, m)| {
        let alpha = Correspondence::involutive(n_dim, n, m);
        let l = LineBundle::new(m);
        let expected = OperatorMatrix::of_operator(n_dim, |b| calc.involution(b, n, l));
        if alpha.to_matrix() != expected {
            return Err(format!("matrix of `{alpha}` differs from i_{{{n},O({m})}}"));
        }
        for j in 0..=n_dim {
            let basis = ChowClass::hyperplane_power(n_dim, j);
            let pushed = alpha.pushforward(&basis).map_err(|e| e.to_string())?;
            expect_eq("alpha_*(H^j) vs i(H^j)", &pushed, &calc.involution(&basis, n, l))?;
        }
        Ok(())
    })
});

identity!(CorrespondenceInvolutive, "correspondence-involutive", min_dim = 1, |ctx, runner| {
    run_property(runner, (1..=ctx.max_dim.max(1), twist_n(), twist_m()), |(n_dim, n, m)| {
        let alpha = Correspondence::involutive(n_dim, n, m);
        let square = alpha.compose(&alpha).map_err(|e| e.to_string())?;
        if square != Correspondence::diagonal(n_dim) {
            return Err(format!("({alpha}) o ({alpha}) = {square}"));
        }
        Ok(())
    })
});

identity!(MatrixBijection, "matrix-bijection", min_dim = 1, |ctx, runner| {
    run_property(runner, (1..=ctx.max_dim.max(1)).prop_flat_map(grid), |rows| {
        let alpha = to_corr(&rows);
        let matrix = alpha.to_matrix();
        let back = Correspondence::from_matrix(&matrix).map_err(|e| e.to_string())?;
        if back != alpha {
            return Err(format!("from_matrix(to_matrix({alpha})) = {back}"));
        }
        // the grid read as a matrix is an arbitrary square matrix
        let as_matrix = OperatorMatrix::new(alpha.grid().to_vec()).map_err(|e| e.to_string())?;
        let round = Correspondence::from_matrix(&as_matrix).map_err(|e| e.to_string())?.to_matrix();
        if round != as_matrix {
            return Err("to_matrix(from_matrix(M)) != M".into());
        }
        Ok(())
    })
});

identity!(CompositionFunctoriality, "composition-functoriality", min_dim = 1, |ctx, runner| {
    let strategy = (1..=ctx.max_dim.max(1)).prop_flat_map(|n| (grid(n), grid(n), class_of_dim(n)));
    run_property(runner, strategy, |(a, b, beta)| {
        let (a, b, beta) = (to_corr(&a), to_corr(&b), class(&beta));
        let composed = a.compose(&b).map_err(|e| e.to_string())?;
        if composed.to_matrix() != &a.to_matrix() * &b.to_matrix() {
            return Err("to_matrix(a o b) != to_matrix(a) to_matrix(b)".into());
        }
        if composed != a.compose_by_intersection(&b).map_err(|e| e.to_string())? {
            return Err("matrix and triple-product compositions differ".into());
        }
        let lhs = composed.pushforward(&beta).map_err(|e| e.to_string())?;
        let rhs = a
            .pushforward(&b.pushforward(&beta).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        expect_eq("(a o b)_* vs a_* b_*", &lhs, &rhs)
    })
});

identity!(PushforwardBilinearity, "pushforward-bilinearity", min_dim = 1, |ctx, runner| {
    let strategy = (1..=ctx.max_dim.max(1))
        .prop_flat_map(|n| (grid(n), grid(n), class_of_dim(n), class_of_dim(n)));
    run_property(runner, strategy, |(a, b, x, y)| {
        let (a, b, x, y) = (to_corr(&a), to_corr(&b), class(&x), class(&y));
        let push = |c: &Correspondence, v: &ChowClass| c.pushforward(v).expect("same N");
        let ab = a.checked_add(&b).map_err(|e| e.to_string())?;
        expect_eq("linear in alpha", &push(&ab, &x), &(&push(&a, &x) + &push(&b, &x)))?;
        expect_eq("linear in beta", &push(&a, &(&x + &y)), &(&push(&a, &x) + &push(&a, &y)))
    })
});
