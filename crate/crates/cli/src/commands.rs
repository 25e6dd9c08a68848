use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use chowcalc::verify::{calculus_by_name, calculus_names, Outcome};
use chowcalc::{
    ChowClass, ClassRegistry, Correspondence, Hypersurface, LineBundle, SignConvention, VerifyConfig,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::{CorrespondCommand, Format, InvolveArgs, ReportArgs, Sign, VerifyArgs};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

type CmdResult = Result<Output, String>;

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn convention(sign: Sign) -> SignConvention {
    match sign {
        Sign::Derived => SignConvention::Derived,
        Sign::Paper => SignConvention::Paper,
    }
}

/// A class given as text or as a JSON array.
pub fn parse_class(literal: &str, ambient: Option<usize>) -> Result<ChowClass, String> {
    let trimmed = literal.trim();
    let class = if trimmed.starts_with('[') {
        let c = ChowClass::from_json_array(trimmed).map_err(|e| e.to_string())?;
        if let Some(n) = ambient.filter(|&n| n != c.ambient_dim()) {
            return Err(format!("class array has {} entries but --ambient is {n}", c.ambient_dim() + 1));
        }
        c
    } else {
        ChowClass::parse(trimmed, ambient).map_err(|e| e.to_string())?
    };
    Ok(class)
}

/// A correspondence given as a file path, inline JSON, or a polynomial in x, y.
pub fn parse_correspondence(arg: &str, ambient: Option<usize>) -> Result<Correspondence, String> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?
    } else {
        arg.to_string()
    };
    let trimmed = text.trim();
    let corr = if trimmed.starts_with('{') {
        Correspondence::from_json(trimmed).map_err(|e| format!("{arg}: {e}"))?
    } else {
        Correspondence::parse(trimmed, ambient).map_err(|e| format!("{arg}: {e}"))?
    };
    if let Some(n) = ambient.filter(|&n| n != corr.ambient_dim()) {
        return Err(format!("{arg}: correspondence lives on P^{} but --ambient is {n}", corr.ambient_dim()));
    }
    Ok(corr)
}

fn format_class(class: &ChowClass, format: Format) -> String {
    match format {
        Format::Text => format!("{class}\n"),
        Format::Json => format!("{}\n", class.to_json_array()),
    }
}

fn format_correspondence(corr: &Correspondence, format: Format) -> String {
    match format {
        Format::Text => format!("{corr}\n"),
        Format::Json => format!("{}\n", corr.to_json()),
    }
}

#[derive(Serialize)]
struct McsCheck {
    n: i64,
    alpha: String,
    milnor_is_image_of_alpha: bool,
    alpha_is_image_of_milnor: bool,
}

pub fn report(args: &ReportArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("{}: {e}", args.input.display()))?;
    let x = Hypersurface::from_json(&text).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let registry = match &args.classes {
        Some(names) => ClassRegistry::builtin().select(names)?,
        None => ClassRegistry::builtin(),
    };
    let sign = convention(args.sign);
    let n = x.ambient_dim() as i64;
    let l = x.line_bundle();

    let classes = registry.evaluate(&x);
    let milnor = x.milnor();
    let mut spot_ns = vec![0, n - 1, n];
    spot_ns.dedup();
    let checks: Vec<McsCheck> = spot_ns
        .into_iter()
        .map(|k| {
            let alpha = x.alpha(k);
            McsCheck {
                n: k,
                milnor_is_image_of_alpha: alpha.involution(k, l) == milnor,
                alpha_is_image_of_milnor: milnor.involution(k, l) == alpha,
                alpha: alpha.to_string(),
            }
        })
        .collect();
    let milnor_from_le = x.milnor_components_from_le(sign);
    let le_from_milnor = x.le_components_from_milnor(sign);

    let stdout = match args.format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "ambient: {}", x.ambient_dim()).unwrap();
            writeln!(out, "degree: {}", x.degree()).unwrap();
            writeln!(out, "model: {}", x.tag().as_str()).unwrap();
            writeln!(out, "segre: {}", x.segre_singular()).unwrap();
            for (name, class) in &classes {
                writeln!(out, "{name}: {class}").unwrap();
            }
            writeln!(out, "euler_char: {}", x.euler_characteristic()).unwrap();
            writeln!(out, "aluffi_degree: {}", x.aluffi_degree()).unwrap();
            writeln!(out, "sign_convention: {}", sign_name(args.sign)).unwrap();
            writeln!(out, "milnor_from_le: {milnor_from_le}").unwrap();
            writeln!(out, "le_from_milnor: {le_from_milnor}").unwrap();
            for c in &checks {
                writeln!(
                    out,
                    "mcs n={}: alpha = {}; M = i(alpha): {}; alpha = i(M): {}",
                    c.n,
                    c.alpha,
                    verdict(c.milnor_is_image_of_alpha),
                    verdict(c.alpha_is_image_of_milnor)
                )
                .unwrap();
            }
            writeln!(out, "by dimension:").unwrap();
            for (name, class) in &classes {
                writeln!(out, "  {name}: {}", class.dimension_annotation()).unwrap();
            }
            out
        }
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("ambient".into(), Value::from(x.ambient_dim()));
            doc.insert("degree".into(), Value::from(x.degree()));
            doc.insert("model".into(), Value::from(x.tag().as_str()));
            doc.insert("segre".into(), Value::from(x.segre_singular().to_string()));
            let mut class_map = Map::new();
            for (name, class) in &classes {
                class_map.insert((*name).into(), Value::from(class.to_string()));
            }
            doc.insert("classes".into(), Value::Object(class_map));
            doc.insert("euler_char".into(), big(&x.euler_characteristic()));
            doc.insert("aluffi_degree".into(), big(&x.aluffi_degree()));
            doc.insert("sign_convention".into(), Value::from(sign_name(args.sign)));
            doc.insert("milnor_from_le".into(), Value::from(milnor_from_le.to_string()));
            doc.insert("le_from_milnor".into(), Value::from(le_from_milnor.to_string()));
            doc.insert("mcs_checks".into(), serde_json::to_value(&checks).unwrap());
            json_line(&Value::Object(doc))
        }
    };
    Ok(Output::ok(stdout))
}

fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Derived => "derived",
        Sign::Paper => "paper",
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn involve(args: &InvolveArgs) -> CmdResult {
    let class = parse_class(&args.class, args.ambient)?;
    let image = class.involution(args.n, LineBundle::new(args.twist));
    Ok(Output::ok(format_class(&image, args.format)))
}

pub fn correspond(cmd: &CorrespondCommand) -> CmdResult {
    match cmd {
        CorrespondCommand::Emit { ambient, n, twist, format } => {
            if *ambient < 1 {
                return Err("correspondences need --ambient >= 1".into());
            }
            let corr = Correspondence::involutive(*ambient, *n, *twist);
            Ok(Output::ok(format_correspondence(&corr, *format)))
        }
        CorrespondCommand::Apply { correspondence, class, ambient, pullback, format } => {
            let corr = parse_correspondence(correspondence, *ambient)?;
            let class = parse_class(class, Some(corr.ambient_dim()))?;
            let image = if *pullback { corr.pullback(&class) } else { corr.pushforward(&class) }
                .map_err(|e| e.to_string())?;
            Ok(Output::ok(format_class(&image, *format)))
        }
        CorrespondCommand::Compose { outer, inner, ambient, format } => {
            let outer = parse_correspondence(outer, *ambient)?;
            let inner = parse_correspondence(inner, Some(outer.ambient_dim()))?;
            let composed = outer.compose(&inner).map_err(|e| e.to_string())?;
            Ok(Output::ok(format_correspondence(&composed, *format)))
        }
    }
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let calculus = calculus_by_name(&args.calculus).ok_or_else(|| {
        format!("unknown calculus `{}` (known: {})", args.calculus, calculus_names().join(", "))
    })?;
    if args.cases == 0 {
        return Err("--cases must be positive".into());
    }
    let config = VerifyConfig { cases: args.cases, calculus, ..VerifyConfig::new(args.seed, args.max_dim) };
    let report = chowcalc::run_verify(&config);
    let code = if report.all_passed() { 0 } else { 1 };
    let stdout = match args.format {
        Format::Text => format!("{report}\n"),
        Format::Json => {
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|(name, outcome)| {
                    let mut m = Map::new();
                    m.insert("identity".into(), Value::from(*name));
                    match outcome {
                        Outcome::Passed { cases } => {
                            m.insert("status".into(), Value::from("pass"));
                            m.insert("cases".into(), Value::from(*cases));
                        }
                        Outcome::Vacuous { reason } => {
                            m.insert("status".into(), Value::from("vacuous"));
                            m.insert("reason".into(), Value::from(reason.as_str()));
                        }
                        Outcome::Failed { counterexample } => {
                            m.insert("status".into(), Value::from("fail"));
                            m.insert("counterexample".into(), Value::from(counterexample.as_str()));
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            let mut doc = Map::new();
            doc.insert("seed".into(), Value::from(report.seed));
            doc.insert("max_dim".into(), Value::from(report.max_dim));
            doc.insert("cases".into(), Value::from(report.cases));
            doc.insert("calculus".into(), Value::from(report.calculus));
            doc.insert("passed".into(), Value::from(report.all_passed()));
            doc.insert("results".into(), Value::Array(results));
            json_line(&Value::Object(doc))
        }
    };
    Ok(Output { stdout, code })
}
