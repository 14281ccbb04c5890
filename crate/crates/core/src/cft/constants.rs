use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::field::{finite_places, is_square, nonresidue_at, Elem, GlobalField, Place, Poly};

use super::sets::{delta_family, intersect, p_partition};
use super::{admissible_modulus, GalElem, Modulus};

/// The parameters of the biquadratic extension together with a modulus
/// and, when known, the verification data that justified them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CftConstants {
    pub a: Elem,
    pub b: Elem,
    /// Correction factors, used over F_q(t) only.
    pub c: Option<Elem>,
    pub d: Option<Elem>,
    pub modulus: Modulus,
    pub verification: Option<VerificationReport>,
}

impl CftConstants {
    pub fn new(a: Elem, b: Elem, c: Option<Elem>, d: Option<Elem>) -> Result<CftConstants> {
        let field = a.field();
        if field.is_rational() && (a.signum() != Some(1) || b.signum() != Some(1)) {
            return domain("over Q both a and b must be positive");
        }
        for x in c.iter().chain(d.iter()) {
            a.check_same_field(x)?;
            if x.is_zero() {
                return domain("zero correction factor");
            }
        }
        let modulus = admissible_modulus(&a, &b, field)?;
        Ok(CftConstants {
            a,
            b,
            c,
            d,
            modulus,
            verification: None,
        })
    }

    pub fn field(&self) -> GlobalField {
        self.a.field()
    }

    /// The nonresidue cofactor used with sigma: a for (-1, +-1), b for
    /// (1,-1).
    pub fn s_sigma(&self, sigma: GalElem) -> Result<&Elem> {
        match sigma {
            GalElem(-1, _) => Ok(&self.a),
            GalElem(1, -1) => Ok(&self.b),
            _ => domain("no cofactor for the identity"),
        }
    }

    /// Representatives of the unit group modulo squares: +-1 over Q, 1 and
    /// a constant nonresidue over F_q(t).
    pub fn unit_reps(&self) -> Vec<Elem> {
        let field = self.field();
        match field {
            GlobalField::Rationals => vec![field.one(), field.int(-1)],
            GlobalField::FunctionField { .. } => vec![
                field.one(),
                nonresidue_at(&Place::DegreeInf, field).expect("function field"),
            ],
        }
    }

    pub fn to_fixture(&self) -> ConstantsFixture {
        ConstantsFixture {
            field: self.field().to_string(),
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.as_ref().map(Elem::to_string),
            d: self.d.as_ref().map(Elem::to_string),
            modulus: self.modulus.to_string(),
            verification: self.verification.clone(),
        }
    }

    pub fn from_fixture(fx: &ConstantsFixture) -> Result<CftConstants> {
        let field = GlobalField::parse(&fx.field)?;
        let parse = |s: &str| field.parse_elem(s);
        let mut consts = CftConstants::new(
            parse(&fx.a)?,
            parse(&fx.b)?,
            fx.c.as_deref().map(parse).transpose()?,
            fx.d.as_deref().map(parse).transpose()?,
        )?;
        if consts.modulus.to_string() != fx.modulus {
            return Err(Error::Parse(format!(
                "fixture modulus {} disagrees with the computed {}",
                fx.modulus, consts.modulus
            )));
        }
        consts.verification = fx.verification.clone();
        Ok(consts)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_fixture()).expect("fixture serializes")
    }

    pub fn from_toml(src: &str) -> Result<CftConstants> {
        let fx: ConstantsFixture =
            toml::from_str(src).map_err(|e| Error::Parse(format!("constants file: {e}")))?;
        CftConstants::from_fixture(&fx)
    }
}

/// On-disk form of a set of constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsFixture {
    pub field: String,
    pub a: String,
    pub b: String,
    pub c: Option<String>,
    pub d: Option<String>,
    pub modulus: String,
    pub verification: Option<VerificationReport>,
}

/// Outcome of checking the three prime-set identities on a finite sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub prime_bound: u64,
    /// Whether ramification sets were compared only at places coprime to
    /// the modulus (always over Q) or at every place (over F_q(t)).
    pub coprime_only: bool,
    pub samples: u64,
    /// Checks performed for (-1,-1), (-1,1) and (1,-1).
    pub checks: [u64; 3],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const BULLETS: [GalElem; 3] = [GalElem(-1, -1), GalElem(-1, 1), GalElem(1, -1)];
const MAX_FAILURES: usize = 8;
const PAIR_PLACES: usize = 12;

/// Sample elements coprime to the modulus: unit multiples of each place
/// generator up to the bound, of pairwise products of the first few, and of
/// a generator times a square.
fn samples(consts: &CftConstants, prime_bound: u64) -> Vec<Elem> {
    let places: Vec<Elem> = finite_places(consts.field(), prime_bound)
        .into_iter()
        .filter(|v| !consts.modulus.contains(v))
        .map(|v| v.generator().expect("finite"))
        .collect();
    let units = consts.unit_reps();
    let mut base: Vec<Elem> = places.clone();
    for i in 0..places.len().min(PAIR_PLACES) {
        for j in i + 1..places.len().min(PAIR_PLACES) {
            base.push(&places[i] * &places[j]);
        }
    }
    if let Some(s) = places.first() {
        let s2 = s.square();
        base.extend(places.iter().skip(1).map(|g| g * &s2));
    }
    base.iter()
        .flat_map(|x| units.iter().map(move |u| u * x))
        .collect()
}

fn verify_bullets(
    consts: &CftConstants,
    prime_bound: u64,
    bullets: &[GalElem],
) -> Result<VerificationReport> {
    let coprime_only = consts.field().is_rational();
    let sample = samples(consts, prime_bound);
    let mut report = VerificationReport {
        prime_bound,
        coprime_only,
        samples: sample.len() as u64,
        checks: [0; 3],
        failures: Vec::new(),
    };
    for p in &sample {
        let part = p_partition(p, consts)?;
        for &sigma in bullets {
            let k = BULLETS
                .iter()
                .position(|&s| s == sigma)
                .expect("nonidentity");
            let mut rhs = intersect(delta_family(sigma, p, None, consts)?);
            if coprime_only {
                rhs.retain(|v| v.is_finite() && !consts.modulus.contains(v));
            }
            rhs.sort();
            let mut lhs = part.fiber(sigma).to_vec();
            lhs.sort();
            report.checks[k] += 1;
            if lhs != rhs && report.failures.len() < MAX_FAILURES {
                let show =
                    |s: &[Place]| s.iter().map(Place::to_string).collect::<Vec<_>>().join(",");
                report.failures.push(format!(
                    "p = {p}, sigma = {sigma}: fiber {{{}}} vs intersection {{{}}}",
                    show(&lhs),
                    show(&rhs)
                ));
            }
        }
    }
    Ok(report)
}

/// Runs the identity checks for all three nontrivial classes on samples
/// built from places of norm at most `prime_bound`.
pub fn verify_constants(consts: &CftConstants, prime_bound: u64) -> Result<VerificationReport> {
    verify_bullets(consts, prime_bound, &BULLETS)
}

/// Bound used to discard candidates quickly before the full check.
const QUICK_BOUND: u64 = 30;

fn passes(consts: &CftConstants, prime_bound: u64, bullets: &[GalElem]) -> Result<bool> {
    Ok(
        verify_bullets(consts, QUICK_BOUND.min(prime_bound), bullets)?.passed()
            && verify_bullets(consts, prime_bound, bullets)?.passed(),
    )
}

fn finish(mut consts: CftConstants, prime_bound: u64) -> Result<CftConstants> {
    let report = verify_constants(&consts, prime_bound)?;
    if !report.passed() {
        return Err(Error::Exhausted(format!(
            "candidate failed the full check: {}",
            report.failures.join("; ")
        )));
    }
    consts.verification = Some(report);
    Ok(consts)
}

/// Searches small parameters passing the verification suite. Over Q: pairs
/// of primes = 1 mod 8. Over F_q(t): a is the least constant nonresidue, b
/// runs over monic polynomials of degree at most 2, and c, d over nonzero
/// polynomials of degree at most 1.
pub fn find_constants(field: GlobalField, prime_bound: u64) -> Result<CftConstants> {
    match field {
        GlobalField::Rationals => {
            let primes: Vec<u64> = crate::field::int::primes_up_to(prime_bound.max(100))
                .into_iter()
                .filter(|p| p % 8 == 1)
                .collect();
            let mut tried = 0;
            for (i, &a) in primes.iter().enumerate() {
                for &b in &primes[i + 1..] {
                    tried += 1;
                    let consts =
                        CftConstants::new(field.int(a as i64), field.int(b as i64), None, None)?;
                    if passes(&consts, prime_bound, &BULLETS)? {
                        return finish(consts, prime_bound);
                    }
                }
            }
            Err(Error::Exhausted(format!(
                "no pair of primes = 1 mod 8 below {} passed ({tried} tried)",
                prime_bound.max(100)
            )))
        }
        GlobalField::FunctionField { q } => {
            let a = nonresidue_at(&Place::DegreeInf, field)?;
            let small: Vec<Elem> = (1..q * q)
                .map(|i| Elem::from_poly(Poly::enumerate_index(q, i)))
                .collect();
            let mut diagnostics = Vec::new();
            for i in q..q * q * q {
                let poly = Poly::enumerate_index(q, i);
                if !poly.is_monic() {
                    continue;
                }
                let b = Elem::from_poly(poly);
                if is_square(&b)? || is_square(&(&a * &b))? {
                    continue;
                }
                let base = CftConstants::new(a.clone(), b.clone(), None, None)?;
                if !passes(&base, prime_bound, &BULLETS[..1])? {
                    diagnostics.push(format!("b = {b}: (-1,-1) fails"));
                    continue;
                }
                let pick = |sigma: GalElem| -> Result<Option<Elem>> {
                    for x in &small {
                        let mut cand = base.clone();
                        if sigma == BULLETS[1] {
                            cand.c = Some(x.clone());
                        } else {
                            cand.d = Some(x.clone());
                        }
                        if passes(&cand, prime_bound, &[sigma])? {
                            return Ok(Some(x.clone()));
                        }
                    }
                    Ok(None)
                };
                match (pick(BULLETS[1])?, pick(BULLETS[2])?) {
                    (Some(c), Some(d)) => {
                        return finish(CftConstants::new(a, b, Some(c), Some(d))?, prime_bound);
                    }
                    (c, d) => diagnostics.push(format!(
                        "b = {b}: no c ({}) / d ({}) of degree <= 1",
                        if c.is_some() { "found" } else { "missing" },
                        if d.is_some() { "found" } else { "missing" }
                    )),
                }
            }
            Err(Error::Exhausted(format!(
                "no constants over {field}: {}",
                diagnostics.join("; ")
            )))
        }
    }
}

const FIXTURE_Q: &str = include_str!("../../fixtures/constants_Q.toml");
const FIXTURE_F3: &str = include_str!("../../fixtures/constants_F3.toml");
const FIXTURE_F5: &str = include_str!("../../fixtures/constants_F5.toml");
const FIXTURE_F7: &str = include_str!("../../fixtures/constants_F7.toml");

/// Shipped constants for Q, F_3(t), F_5(t) and F_7(t). Other fields are
/// searched on the fly at a small bound.
pub fn bundled_constants(field: GlobalField) -> Result<CftConstants> {
    let src = match field {
        GlobalField::Rationals => FIXTURE_Q,
        GlobalField::FunctionField { q: 3 } => FIXTURE_F3,
        GlobalField::FunctionField { q: 5 } => FIXTURE_F5,
        GlobalField::FunctionField { q: 7 } => FIXTURE_F7,
        _ => return find_constants(field, 200),
    };
    CftConstants::from_toml(src)
}
