use anyhow::{bail, Context};
use nilcoh::catalog;
use nilcoh::cohomology::{
    betti, bott_chern_11_dim, closed_real_11_forms, hodge_chase, spectral_pages, twisted_betti,
    twisted_dolbeault_pq,
};
use nilcoh::differentials::{chevalley_d, twisted_d};
use nilcoh::exterior::apply_i;
use nilcoh::lck::{classify_lck, fundamental_form, LckCertificate};
use nilcoh::lie::is_integrable;
use nilcoh::{
    AlgebraFile, BasisMode, CatalogEntry, ComplexStructure, ExtForm, HermitianMetric, Rational,
};

use crate::report::{Report, CONVENTIONS};

/// A validated input file.
pub struct Input {
    pub entry: CatalogEntry,
}

impl Input {
    pub fn parse(text: &str, source: &str) -> anyhow::Result<Input> {
        let file = AlgebraFile::parse(text)
            .with_context(|| format!("{source}: cannot parse algebra file"))?;
        let entry = file.to_entry(source)?;
        Ok(Input { entry })
    }

    fn names(&self) -> &[String] {
        self.entry.algebra.names()
    }

    fn j(&self) -> anyhow::Result<&ComplexStructure> {
        match &self.entry.complex_structure {
            Some(j) => Ok(j),
            None => bail!("this command needs `J` lines in the input"),
        }
    }

    fn metric(&self) -> anyhow::Result<&HermitianMetric> {
        match &self.entry.metric {
            Some(h) => Ok(h),
            None => bail!("this command needs a `metric` line in the input"),
        }
    }

    /// `--theta` if given, else the file's `theta`.
    fn theta(&self, arg: Option<&str>) -> anyhow::Result<Option<ExtForm>> {
        let Some(text) = arg else {
            return Ok(self.entry.theta.clone());
        };
        let coeffs = text
            .split_whitespace()
            .map(|t| {
                t.parse::<Rational>()
                    .with_context(|| format!("invalid theta component `{t}`"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let n = self.entry.algebra.dim();
        if coeffs.len() != n {
            bail!("theta needs {n} components, got {}", coeffs.len());
        }
        Ok(Some(ExtForm::real_covector(&coeffs)))
    }

    fn require_theta(&self, arg: Option<&str>) -> anyhow::Result<ExtForm> {
        match self.theta(arg)? {
            Some(t) => Ok(t),
            None => bail!("no theta: pass --theta or add a `theta` line"),
        }
    }
}

fn covector_text(theta: &ExtForm) -> String {
    theta
        .to_dense()
        .iter()
        .map(|x| x.re.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

pub fn validate(input: &str, source: &str) -> anyhow::Result<Report> {
    let file = AlgebraFile::parse(input)
        .with_context(|| format!("{source}: cannot parse algebra file"))?;
    let mut r = Report::new("validate");
    r.push("dim", file.dim());
    let g = match file.algebra() {
        Ok(g) => {
            r.push("jacobi", "ok");
            g
        }
        Err(e) => {
            r.ok = false;
            r.push("jacobi", format!("fail: {e}"));
            r.push("status", "fail");
            return Ok(r);
        }
    };
    r.push("nilpotent", g.is_nilpotent());
    let j = match file.complex_structure() {
        Ok(None) => {
            r.push("complex_structure", "none");
            None
        }
        Ok(Some(j)) => {
            let integrable = is_integrable(&g, &j)?;
            r.ok &= integrable;
            r.push(
                "complex_structure",
                if integrable {
                    "integrable"
                } else {
                    "not-integrable"
                },
            );
            Some(j)
        }
        Err(e) => {
            r.ok = false;
            r.push("complex_structure", format!("fail: {e}"));
            None
        }
    };
    match file.hermitian_metric() {
        Ok(None) => r.push("metric", "none"),
        Ok(Some(h)) => match &j {
            Some(j) if !h.is_compatible(j) => {
                r.ok = false;
                r.push("metric", "incompatible");
            }
            _ => r.push("metric", "ok"),
        },
        Err(e) => {
            r.ok = false;
            r.push("metric", format!("fail: {e}"));
        }
    }
    match file.theta_form() {
        None => r.push("theta", "none"),
        Some(t) => {
            let closed = chevalley_d(&g).apply(&t)?.is_zero();
            r.ok &= closed;
            r.push("theta", if closed { "closed" } else { "not-closed" });
        }
    }
    r.push("status", if r.ok { "ok" } else { "fail" });
    Ok(r)
}

pub fn betti_report(input: &Input) -> Report {
    let mut r = Report::new("betti");
    for (k, b) in betti(&input.entry.algebra).iter().enumerate() {
        r.push(format!("b{k}"), b);
    }
    r
}

pub fn twisted_betti_report(input: &Input, theta: Option<&str>) -> anyhow::Result<Report> {
    let theta = input.require_theta(theta)?;
    let mut r = Report::new("twisted-betti");
    r.push("theta", covector_text(&theta));
    for (k, h) in twisted_betti(&input.entry.algebra, &theta)?
        .iter()
        .enumerate()
    {
        r.push(format!("H {k}"), h);
    }
    Ok(r)
}

pub fn dolbeault_report(input: &Input, theta: Option<&str>, p: usize) -> anyhow::Result<Report> {
    let theta = input.theta(theta)?;
    let j = input.j()?;
    let mut r = Report::new("dolbeault");
    r.push(
        "theta",
        theta.as_ref().map_or_else(|| "none".into(), covector_text),
    );
    let dims = twisted_dolbeault_pq(&input.entry.algebra, j, theta.as_ref(), p)?;
    for (q, h) in dims.iter().enumerate() {
        r.push(format!("H {p},{q}"), h);
    }
    Ok(r)
}

pub fn spectral_report(input: &Input, theta: Option<&str>) -> anyhow::Result<Report> {
    let theta = input.require_theta(theta)?;
    let pages = spectral_pages(&input.entry.algebra, input.j()?, &theta)?;
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut r = Report::new("spectral");
    r.push("theta", covector_text(&theta));
    r.push("w_dims", join(&pages.w_dims));
    r.push("levels", join(&pages.levels));
    r.check("a_chain", pages.a_chain_ok);
    r.check("filtration_preserved", pages.filtration_preserved);
    r.check("e0_is_wedge", pages.e0_is_wedge);
    for ((p, q), d) in &pages.e1_dims {
        r.push(format!("E1 {p},{q}"), d);
    }
    r.push("e1_total", pages.e1_total());
    Ok(r)
}

pub fn bott_chern_report(input: &Input, theta: Option<&str>) -> anyhow::Result<Report> {
    let theta = input.theta(theta)?;
    let (g, j) = (&input.entry.algebra, input.j()?);
    let mut r = Report::new("bott-chern");
    r.push(
        "theta",
        theta.as_ref().map_or_else(|| "none".into(), covector_text),
    );
    r.push(
        "closed_11",
        closed_real_11_forms(g, j, theta.as_ref())?.len(),
    );
    r.push("bott_chern_11", bott_chern_11_dim(g, j, theta.as_ref())?);
    Ok(r)
}

pub fn chase_report(
    input: &Input,
    theta: Option<&str>,
    omega: Option<&str>,
) -> anyhow::Result<Report> {
    let theta = input.require_theta(theta)?;
    let (g, j) = (&input.entry.algebra, input.j()?);
    let omega = match omega {
        Some(text) => ExtForm::parse(text, input.names(), BasisMode::RealDual)
            .map_err(|e| anyhow::anyhow!("invalid --omega: {e}"))?,
        None => fundamental_form(j, input.metric().context("no --omega given")?)?,
    };
    let res = hodge_chase(g, j, &theta, &omega)?;
    let dt = twisted_d(g, &theta)?;
    let residual = dt.apply(&res.tau)?.sub(&omega)?;
    let residual_i = dt.apply(&apply_i(&res.tau, j))?;
    let names = input.names();
    let mut r = Report::new("chase");
    r.push("theta", covector_text(&theta));
    r.push("omega", omega.render(names));
    r.push("tau", res.tau.render(names));
    r.push("constant", opt(&res.constant));
    r.push("method", if res.fallback { "general" } else { "potential" });
    r.check("residual_omega_zero", residual.is_zero());
    r.check("residual_i_zero", residual_i.is_zero());
    Ok(r)
}

fn certificate(input: &Input) -> anyhow::Result<LckCertificate> {
    Ok(classify_lck(
        &input.entry.algebra,
        input.j()?,
        input.metric()?,
    )?)
}

pub fn lck_report(input: &Input) -> anyhow::Result<Report> {
    let cert = certificate(input)?;
    let names = input.names();
    let mut r = Report::new("lck");
    r.push("omega", cert.omega.render(names));
    r.push(
        "lee",
        cert.lee
            .as_ref()
            .map_or_else(|| "none".into(), |t| t.render(names)),
    );
    r.check("is_lck", cert.is_lck);
    r.push("is_kahler", cert.is_kahler);
    r.push("is_vaisman", cert.is_vaisman);
    r.push("potential_constant", opt(&cert.potential_constant));
    Ok(r)
}

pub fn classify_report(input: &Input) -> anyhow::Result<Report> {
    let cert = certificate(input)?;
    let names = input.names();
    let mut r = Report::new("classify");
    r.push("omega", cert.omega.render(names));
    r.push(
        "lee",
        cert.lee
            .as_ref()
            .map_or_else(|| "none".into(), |t| t.render(names)),
    );
    if let (Some(file_theta), Some(lee)) = (&input.entry.theta, &cert.lee) {
        r.check("lee_matches_file", file_theta == lee);
    }
    r.push("is_lck", cert.is_lck);
    r.push("is_kahler", cert.is_kahler);
    r.push("lee_closed", cert.lee_closed);
    r.push("lee_unit_norm", cert.lee_unit_norm);
    r.push("is_vaisman", cert.is_vaisman);
    r.push("dc_theta_identity", cert.dc_theta_identity);
    r.push("omega0_inertia", opt(&cert.omega0_inertia));
    r.push("lee_ideal_ok", cert.lee_ideal_ok);
    r.push("quotient_abelian", cert.quotient_abelian);
    r.push("green", cert.is_green());
    r.push("is_heisenberg_x_line", cert.is_heisenberg_x_line);
    r.push("potential_constant", opt(&cert.potential_constant));
    Ok(r)
}

/// The entry as an algebra file; without `export` the notes and
/// conventions are prepended as comments.
pub fn catalog_text(name: &str, n: Option<usize>, export: bool) -> anyhow::Result<String> {
    let entry = catalog::by_name(name, n)
        .map_err(|e| anyhow::anyhow!("{e}; known entries: {}", catalog::NAMES.join(", ")))?;
    let body = nilcoh::file::export_entry(&entry);
    if export {
        return Ok(body);
    }
    let mut s = format!("# {}\n", entry.name);
    for line in entry.notes.lines() {
        s.push_str(&format!("# {line}\n"));
    }
    s.push_str(&format!("# conventions: {}\n", CONVENTIONS.join(", ")));
    s.push_str(&body);
    Ok(s)
}
