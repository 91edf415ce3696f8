use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use gmconn::arrangement::{label, Arrangement};
use gmconn::connection::{
    classify_weights, cohomology_action, formal_connection, gauss_manin_matrix, induced_map,
    verify_aomoto_chain_map, ConnectionReport, Locus, ProjectionData,
};
use gmconn::fixtures;
use gmconn::fox::{
    check_chain_map, phi1, phi2_solve_fallback, Endomorphism, Monodromy, Phi2Fallback,
    Presentation, RelatorCertificate, UniversalComplex,
};
use gmconn::linalg::{char_poly, parse_matrix, Matrix};
use gmconn::oscomplex::AomotoComplex;
use gmconn::ring::{parse_rational, LaurentPoly, Rational, DEFAULT_CAP};
use serde_json::json;
use thiserror::Error;

use crate::args::{Cli, Command, RingChoice};
use crate::output::Report;

/// Raised after the report is printed when some identity failed.
#[derive(Debug, Error)]
#[error("verification failed: {}", .0.join(", "))]
pub struct VerificationFailed(pub Vec<String>);

struct Inputs {
    arrangement: Arrangement,
    presentation: Presentation,
    endomorphism: Option<Endomorphism>,
    certificate: Option<RelatorCertificate>,
    shipped: bool,
    seed: u64,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl Inputs {
    fn load(cli: &Cli) -> Result<Self> {
        let arrangement = match &cli.arrangement {
            Some(p) => Arrangement::parse(&read(p)?)
                .with_context(|| format!("parse error in {}", p.display()))?,
            None => fixtures::arrangement(),
        };
        let presentation = match &cli.presentation {
            Some(p) => Presentation::parse(&read(p)?)
                .with_context(|| format!("parse error in {}", p.display()))?,
            None => fixtures::presentation(),
        };
        let n = presentation.ngens();
        let shipped_group = cli.presentation.is_none();
        let endomorphism = match &cli.endomorphism {
            Some(p) => Some(
                Endomorphism::parse(&read(p)?, n)
                    .with_context(|| format!("parse error in {}", p.display()))?,
            ),
            None if shipped_group => Some(fixtures::artin_a12()),
            None => None,
        };
        let certificate = match &cli.certificate {
            Some(p) => Some(
                RelatorCertificate::parse(&read(p)?, n)
                    .with_context(|| format!("parse error in {}", p.display()))?,
            ),
            None if shipped_group && cli.endomorphism.is_none() => {
                Some(fixtures::artin_a12_certificate())
            }
            None => None,
        };
        Ok(Self {
            arrangement,
            presentation,
            endomorphism,
            certificate,
            shipped: cli.arrangement.is_none() && shipped_group && cli.endomorphism.is_none(),
            seed: cli.seed,
        })
    }

    fn ngens(&self) -> usize {
        self.presentation.ngens()
    }

    fn universal(&self) -> Result<UniversalComplex> {
        Ok(UniversalComplex::new(&self.presentation)?)
    }

    fn compatible(&self) -> bool {
        self.arrangement.len() == self.ngens()
    }

    /// Φ⁰, Φ¹, Φ²; without a certificate Φ² comes from the chain condition
    /// and is flagged as non-canonical.
    fn monodromy(&self, report: &mut Report) -> Result<Monodromy> {
        let phi = self
            .endomorphism
            .as_ref()
            .context("this subcommand needs --endomorphism")?;
        if let Some(cert) = &self.certificate {
            return Ok(Monodromy::new(&self.presentation, phi, cert)?);
        }
        let fb = self.fallback()?;
        let p2 = fb.solution.ring_solution().cloned().with_context(|| {
            format!(
                "no certificate, and the solution of Δ¹·X = Φ¹·Δ¹ found by elimination has denominator {}; \
                 supply --certificate",
                fb.solution.denom
            )
        })?;
        report.note("phi2", non_canonical(&fb));
        let n = self.ngens();
        Ok(Monodromy {
            phi: [Matrix::identity(1, n), phi1(phi)?, p2],
        })
    }

    fn fallback(&self) -> Result<Phi2Fallback> {
        let phi = self
            .endomorphism
            .as_ref()
            .context("this subcommand needs --endomorphism")?;
        let uc = self.universal()?;
        let p1 = phi1(phi)?;
        check_chain_map(0, uc.delta0(), &Matrix::identity(1, self.ngens()), &p1)?;
        Ok(phi2_solve_fallback(uc.delta1(), &p1)?)
    }
}

fn non_canonical(fb: &Phi2Fallback) -> String {
    format!(
        "no certificate: Φ² solves the chain condition but is NON-CANONICAL (solution family of dimension {})",
        fb.kernel_dimension()
    )
}

fn parse_point(raw: &[String], n: usize) -> Result<Vec<Rational>> {
    let point = raw
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()
        .context("invalid evaluation point")?;
    ensure!(
        point.len() == n,
        "evaluation point has {} coordinates, expected {n}",
        point.len()
    );
    Ok(point)
}

fn fmt_point(p: &[Rational]) -> String {
    p.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn seq(v: &[usize]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn run(cli: &Cli) -> Result<()> {
    let inputs = Inputs::load(cli)?;
    let mut report = Report::new(cli.format);
    match &cli.command {
        Command::Info => info(&inputs, &mut report),
        Command::Aomoto => aomoto(&inputs, &mut report),
        Command::Fox => fox(&inputs, &mut report),
        Command::Monodromy => monodromy(&inputs, &mut report),
        Command::Connection { at } => connection(&inputs, &mut report, at.as_deref()),
        Command::Specialize { at, ring } => specialize(&inputs, &mut report, at, *ring),
        Command::Induced { xi, locus, at } => {
            induced(&inputs, &mut report, xi, locus.as_deref(), at.as_deref())
        }
        Command::Verify => verify(&inputs, &mut report),
    }?;
    if cli.command_is_verify() {
        report.summary();
    }
    match report.failures() {
        [] => Ok(()),
        f => Err(VerificationFailed(f.to_vec()).into()),
    }
}

impl Cli {
    fn command_is_verify(&self) -> bool {
        matches!(self.command, Command::Verify)
    }
}

fn sets(v: &[Vec<usize>]) -> (serde_json::Value, String) {
    let labels: Vec<String> = v.iter().map(|s| label(s)).collect();
    (json!(labels), labels.join(" "))
}

fn info(inputs: &Inputs, r: &mut Report) -> Result<()> {
    let a = &inputs.arrangement;
    let basis = a.nbc_basis();
    let deps = basis.dependencies();
    r.section("arrangement");
    r.value("dim", a.dim(), a.dim());
    r.value("hyperplanes", a.len(), a.len());
    let (j, h) = sets(&deps.circuits);
    r.value("circuits", j, h);
    let (j, h) = sets(&deps.broken_circuits);
    r.value("broken_circuits", j, h);
    let (j, h) = sets(&deps.empty_min);
    r.value("empty_minimal", j, h);
    for q in 0..=basis.top_degree() {
        let (j, h) = sets(basis.degree(q));
        r.value(&format!("nbc_{q}"), j, h);
    }
    let b = basis.betti();
    r.value("betti", json!(b), seq(&b));
    r.value(
        "euler_characteristic",
        basis.euler_characteristic(),
        basis.euler_characteristic(),
    );
    Ok(())
}

fn aomoto(inputs: &Inputs, r: &mut Report) -> Result<()> {
    let ac = AomotoComplex::new(&inputs.arrangement);
    r.section("Aomoto complex");
    for q in 0..ac.complex().boundaries().len() {
        r.matrix("mu", Some(q), ac.mu(q));
    }
    let bad = ac.non_linear_entries();
    r.check(
        "entries are integral linear forms",
        bad.is_empty(),
        format!("{bad:?}"),
    );
    Ok(())
}

fn fox(inputs: &Inputs, r: &mut Report) -> Result<()> {
    let uc = inputs.universal()?;
    r.section("universal complex");
    r.matrix("Delta", Some(0), uc.delta0());
    r.matrix("Delta", Some(1), uc.delta1());
    r.check("Δ⁰·Δ¹ = 0", true, "");
    Ok(())
}

fn monodromy(inputs: &Inputs, r: &mut Report) -> Result<()> {
    r.section("monodromy");
    if inputs.certificate.is_some() || inputs.endomorphism.is_none() {
        let m = inputs.monodromy(r)?;
        for q in 0..3 {
            r.matrix("Phi", Some(q), m.degree(q));
        }
        return Ok(());
    }
    let phi = inputs.endomorphism.as_ref().expect("checked above");
    let n = inputs.ngens();
    let fb = inputs.fallback()?;
    r.note("phi2", non_canonical(&fb));
    r.matrix("Phi", Some(0), &Matrix::<LaurentPoly>::identity(1, n));
    r.matrix("Phi", Some(1), &phi1(phi)?);
    match fb.solution.ring_solution() {
        Some(p2) => r.matrix("Phi", Some(2), p2),
        None => {
            r.matrix("Phi2_numerator", None, &fb.solution.numerator);
            r.value(
                "Phi2_denominator",
                fb.solution.denom.to_string(),
                &fb.solution.denom,
            );
        }
    }
    Ok(())
}

fn connection(inputs: &Inputs, r: &mut Report, at: Option<&[String]>) -> Result<()> {
    let uc = inputs.universal()?;
    let m = inputs.monodromy(r)?;
    let cr = ConnectionReport::build(&uc, &m, DEFAULT_CAP, inputs.seed)?;
    let lambda = at.map(|a| parse_point(a, inputs.ngens())).transpose()?;
    for d in &cr.degrees {
        let q = d.degree;
        r.section(&format!("degree {q}"));
        r.matrix("Phi", Some(q), &d.phi);
        r.matrix("Omega", Some(q), &d.omega);
        r.value(
            &format!("eigen_monomials_{q}"),
            d.monomials.to_string(),
            &d.monomials,
        );
        r.value(
            &format!("eigen_linear_forms_{q}"),
            d.linear_forms.to_string(),
            &d.linear_forms,
        );
        r.check(
            &format!("spectrum of Ω^{q} is the logarithm of that of Φ^{q}"),
            d.spectra_correspond(),
            "",
        );
        exp_relation_records(r, q, &d.exp_relation);
        if let Some(l) = &lambda {
            let gm = gauss_manin_matrix(&d.omega, l)?;
            r.matrix("Omega_at", Some(q), &gm);
            let ev: Vec<String> = d
                .linear_forms
                .multiset()
                .iter()
                .map(|v| v.evaluate(l).to_string())
                .collect();
            r.value(&format!("eigenvalues_at_{q}"), json!(ev), ev.join(" "));
        }
    }
    for (q, f) in cr.series_chain.iter().enumerate() {
        let detail = f.map_or(String::new(), |(d, i, j)| {
            format!("order {d}, entry ({i},{j})")
        });
        r.check(
            &format!("series chain identity Δ^{q}, order ≤ {DEFAULT_CAP}"),
            f.is_none(),
            detail,
        );
    }
    if inputs.compatible() {
        let ac = AomotoComplex::new(&inputs.arrangement);
        let mu = ac.complex().boundaries().to_vec();
        let ok = verify_aomoto_chain_map(&mu, &cr.omega());
        r.check(
            "μ·Ω^{q+1} = Ω^q·μ",
            ok.is_ok(),
            ok.err().map_or(String::new(), |e| e.to_string()),
        );
    }
    Ok(())
}

/// The entrywise exponential relation is reported through the order at
/// which it holds; only the spectral form is an identity in general.
fn exp_relation_records(r: &mut Report, q: usize, e: &gmconn::connection::ExpRelationReport) {
    let through = e.agrees_through_degree.map_or(-1, |d| d as i64);
    r.check(
        &format!("Φ^{q}(exp y) ≡ exp Ω^{q} entrywise mod order 2"),
        through >= 1,
        format!("agrees through order {through}"),
    );
    r.check(
        &format!(
            "char poly of Φ^{q}(exp y) ≡ char poly of exp Ω^{q} mod order {}",
            e.cap + 1
        ),
        e.char_polys_agree,
        "",
    );
    if !e.passed() {
        let m = &e.mismatches[0];
        r.note(
            "exp relation",
            format!(
                "degree {q}: entrywise agreement stops at order {}; first mismatch ({},{}): {} vs {} ({} entries differ)",
                through + 1,
                m.row,
                m.col,
                m.substituted,
                m.exponential,
                e.mismatches.len()
            ),
        );
    }
}

fn specialize(inputs: &Inputs, r: &mut Report, at: &[String], ring: RingChoice) -> Result<()> {
    let point = match ring {
        RingChoice::X => parse_point(at, inputs.ngens())?,
        RingChoice::Y => parse_point(at, inputs.arrangement.len())?,
    };
    r.section(&format!("specialization at {}", fmt_point(&point)));
    let res = match ring {
        RingChoice::X => {
            let k = inputs.universal()?.complex();
            for (q, b) in k.specialize(&point)?.boundaries().iter().enumerate() {
                r.matrix("Delta_at", Some(q), b);
            }
            classify_weights(&k, &point)?
        }
        RingChoice::Y => {
            let ac = AomotoComplex::new(&inputs.arrangement);
            for (q, b) in ac
                .complex()
                .specialize(&point)?
                .boundaries()
                .iter()
                .enumerate()
            {
                r.matrix("mu_at", Some(q), b);
            }
            classify_weights(ac.complex(), &point)?
        }
    };
    r.value("chain_ranks", json!(res.betti), seq(&res.betti));
    r.value("cohomology", json!(res.cohomology), seq(&res.cohomology));
    r.value(
        "euler_characteristic",
        res.euler_characteristic,
        res.euler_characteristic,
    );
    let verdict = if res.is_trivial_system() {
        "trivial"
    } else if res.non_resonant && res.top_matches_euler {
        "non-resonant"
    } else {
        "resonant"
    };
    r.value("verdict", verdict, verdict);
    if ring == RingChoice::X && inputs.endomorphism.is_some() {
        let uc = inputs.universal()?;
        let m = inputs.monodromy(r)?;
        let deltas = (0..2)
            .map(|q| uc.delta(q).evaluate(&point))
            .collect::<Result<Vec<_>, _>>()?;
        let phis = (0..3)
            .map(|q| m.degree(q).evaluate(&point))
            .collect::<Result<Vec<_>, _>>()?;
        for (q, psi) in cohomology_action(&deltas, &phis)?.iter().enumerate() {
            if psi.rows() > 0 {
                r.matrix("Psi", Some(q), psi);
            }
        }
    }
    Ok(())
}

fn projection(
    inputs: &Inputs,
    xi_text: &str,
    locus: Option<Locus>,
) -> Result<(ProjectionData, UniversalComplex, AomotoComplex)> {
    ensure!(
        inputs.compatible(),
        "arrangement and presentation have different numbers of generators"
    );
    let n = inputs.ngens();
    let xi: Matrix<LaurentPoly> = parse_matrix(xi_text, n).context("parse error in Ξ")?;
    let uc = inputs.universal()?;
    let ac = AomotoComplex::new(&inputs.arrangement);
    let locus = locus.unwrap_or_else(|| Locus::whole(n));
    let data = ProjectionData::on_locus(xi, uc.delta1(), ac.mu(1), locus, inputs.seed)?;
    Ok((data, uc, ac))
}

fn induced(
    inputs: &Inputs,
    r: &mut Report,
    xi: &Path,
    locus: Option<&Path>,
    at: Option<&[String]>,
) -> Result<()> {
    let n = inputs.ngens();
    let locus = locus
        .map(|p| -> Result<Locus> { Ok(Locus::parse(&read(p)?, n)?) })
        .transpose()?;
    let (data, _, _) = projection(inputs, &read(xi)?, locus)?;
    let m = inputs.monodromy(r)?;
    let fc = formal_connection(&m.phi)?;
    r.section("induced maps");
    if !data.locus().is_whole() {
        r.value("locus", data.locus().to_string(), data.locus());
    }
    r.matrix("Xi", None, data.xi());
    r.matrix("Upsilon", None, data.upsilon());
    let phi_bar = induced_map(data.xi(), m.degree(2))?;
    let omega_bar = induced_map(data.upsilon(), fc.degree(2))?;
    r.matrix("Phi_bar", None, &phi_bar);
    r.matrix("Omega_bar", None, &omega_bar);
    if let Some(at) = at {
        let t = parse_point(at, n)?;
        if !data.locus().contains(&t) {
            bail!("point {} is off the locus {}", fmt_point(&t), data.locus());
        }
        r.matrix("Phi_bar_at", None, &phi_bar.evaluate(&t)?);
    }
    Ok(())
}

fn verify(inputs: &Inputs, r: &mut Report) -> Result<()> {
    let uc = inputs.universal()?;
    r.section("universal complex");
    r.check("Δ⁰·Δ¹ = 0", true, "");
    let ac = AomotoComplex::new(&inputs.arrangement);
    r.section("Aomoto complex");
    let mu = ac.complex().boundaries().to_vec();
    let mm = mu
        .windows(2)
        .all(|w| w[0].mat_mul(&w[1]).is_ok_and(|p| p.is_zero()));
    r.check("μ^q·μ^{q+1} = 0", mm, "");
    r.check(
        "μ entries are integral linear forms",
        ac.non_linear_entries().is_empty(),
        "",
    );
    let b = ac.betti();
    r.check(
        "nbc counts give the Euler characteristic",
        b.iter()
            .enumerate()
            .map(|(q, &v)| if q % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum::<i64>()
            == ac.basis().euler_characteristic(),
        seq(&b),
    );
    if inputs.compatible() {
        for q in 0..2 {
            let same = &uc.delta(q).linear_part() == ac.mu(q);
            r.check(&format!("linear_part(Δ^{q}) = μ^{q}"), same, "");
        }
    } else {
        r.note(
            "linearization",
            "arrangement and presentation differ in size; skipped",
        );
    }

    if inputs.endomorphism.is_none() {
        return Ok(());
    }
    r.section("monodromy");
    let m = match inputs.monodromy(r) {
        Ok(m) => m,
        Err(e) => {
            r.check("monodromy is a chain map", false, format!("{e:#}"));
            return Ok(());
        }
    };
    if inputs.certificate.is_some() {
        r.check("certificate reduces to φ(r_l) for every relator", true, "");
    }
    for q in 0..2 {
        let ok = check_chain_map(q, uc.delta(q), m.degree(q), m.degree(q + 1));
        r.check(
            &format!("Δ^{q}·Φ^{} = Φ^{q}·Δ^{q}", q + 1),
            ok.is_ok(),
            ok.err().map_or(String::new(), |e| e.to_string()),
        );
    }
    for q in 0..3 {
        r.check(
            &format!("Φ^{q}(1) = I"),
            m.degree(q).at_one().is_identity(),
            "",
        );
    }

    r.section("formal connection");
    let cr = match ConnectionReport::build(&uc, &m, DEFAULT_CAP, inputs.seed) {
        Ok(c) => c,
        Err(e) => {
            r.check("formal connection and certified spectra", false, e);
            return Ok(());
        }
    };
    r.check("Ω^q are integral linear forms", true, "");
    for d in &cr.degrees {
        let q = d.degree;
        r.check(
            &format!("eigenvalues of Φ^{q} certified monomials"),
            true,
            &d.monomials,
        );
        r.check(
            &format!("eigenvalues of Ω^{q} certified linear forms"),
            true,
            &d.linear_forms,
        );
        r.check(
            &format!("spectrum of Ω^{q} is the logarithm of that of Φ^{q}"),
            d.spectra_correspond(),
            "",
        );
        exp_relation_records(r, q, &d.exp_relation);
    }
    for (q, f) in cr.series_chain.iter().enumerate() {
        let detail = f.map_or(String::new(), |(d, i, j)| {
            format!("order {d}, entry ({i},{j})")
        });
        r.check(
            &format!("series chain identity Δ^{q}, order ≤ {DEFAULT_CAP}"),
            f.is_none(),
            detail,
        );
    }
    if inputs.compatible() {
        let ok = verify_aomoto_chain_map(&mu, &cr.omega());
        r.check(
            "μ·Ω^{q+1} = Ω^q·μ",
            ok.is_ok(),
            ok.err().map_or(String::new(), |e| e.to_string()),
        );
    }

    if inputs.shipped {
        r.section("projections");
        let fc = formal_connection(&m.phi)?;
        let cases = [
            ("non-resonant Ξ", fixtures::XI_NONRESONANT, None),
            (
                "resonant Ξ",
                fixtures::XI_RESONANT,
                Some(fixtures::resonant_locus()),
            ),
        ];
        for (name, text, locus) in cases {
            let on = locus.as_ref().map_or(String::new(), |l| format!(" on {l}"));
            match projection(inputs, text, locus) {
                Ok((data, _, _)) => {
                    r.check(
                        &format!("{name}: Δ¹·Ξ = 0, μ¹·Υ = 0, full rank{on}"),
                        true,
                        "",
                    );
                    let ok = induced_map(data.xi(), m.degree(2)).is_ok()
                        && induced_map(data.upsilon(), fc.degree(2)).is_ok();
                    r.check(&format!("{name}: Φ̄ and Ω̄ exist over the ring"), ok, "");
                }
                Err(e) => r.check(
                    &format!("{name}: projection data{on}"),
                    false,
                    format!("{e:#}"),
                ),
            }
        }
        let t = vec![Rational::from_integer(2.into()); inputs.ngens()];
        let res = classify_weights(&uc.complex(), &t)?;
        r.check(
            "t = (2,2,2,2) is non-resonant with top cohomology |e(M)|",
            res.non_resonant && res.top_matches_euler,
            seq(&res.cohomology),
        );
        let deltas = (0..2)
            .map(|q| uc.delta(q).evaluate(&t))
            .collect::<Result<Vec<_>, _>>()?;
        let phis = (0..3)
            .map(|q| m.degree(q).evaluate(&t))
            .collect::<Result<Vec<_>, _>>()?;
        let psi = cohomology_action(&deltas, &phis)?;
        let cp = char_poly(&psi[2])?;
        let t1t2 = &t[0] * &t[1];
        let split = cp
            .deflate(&t1t2)
            .and_then(|c| c.deflate(&Rational::from_integer(1.into())));
        r.check(
            "Ψ² at t = (2,2,2,2) has eigenvalues {t₁t₂, 1}",
            split.is_some_and(|c| c.degree() == 0),
            cp,
        );
    }
    Ok(())
}
