use std::io::Read;

use serde_json::{json, Map, Value};
use spinoptics::lens::{
    contraction_sweep, decompose, is_focused, one_lens_chain, reconstruct, renormalize_core,
    ContractionRow, OneLensSystem, Side, WignerDecomposition,
};
use spinoptics::lorentz::lift;
use spinoptics::polarization::{
    apply_mueller, coherency_from_stokes, decohere, mixedness, mueller_from_sl2c,
    stokes_from_coherency, MixednessReport, StokesVector,
};
use spinoptics::sl2c::{classify_real, compose, ConjugacyClass};
use spinoptics::Tolerances;

use crate::args::{Cli, Command, Format, SideArg};
use crate::chain::{parse_chain, ChainSpec};
use crate::error::CliError;
use crate::output::{
    complex, format_number, lorentz_matrix, num, nums, ray_matrix, sl2c_matrix, tolerances,
    OutputEnvelope, Table,
};

/// Executes one invocation and returns the text to print.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    let tol = tolerances_from(cli)?;
    let table_command = matches!(
        cli.command,
        Command::Stokes { .. } | Command::Contract { .. }
    );
    if cli.format == Format::Csv && !table_command {
        return Err(CliError::Usage(
            "--format csv is only available for the stokes and contract commands".into(),
        ));
    }

    let (envelope, table) = match &cli.command {
        Command::Compose { chain } => (
            compose_cmd(&read_chain(chain, stdin)?, cli.degrees, &tol)?,
            None,
        ),
        Command::Lift { chain } => (
            lift_cmd(&read_chain(chain, stdin)?, cli.degrees, &tol)?,
            None,
        ),
        Command::Stokes {
            chain,
            input,
            decohere,
        } => {
            let spec = read_chain(chain, stdin)?;
            let (env, table) = stokes_cmd(&spec, input, *decohere, cli.degrees, &tol)?;
            (env, Some(table))
        }
        Command::Lens {
            z1,
            z2,
            f,
            decompose,
        } => (lens_cmd(*z1, *z2, *f, *decompose, &tol)?, None),
        Command::Contract { side, eps } => {
            let (env, table) = contract_cmd(*side, eps, &tol)?;
            (env, Some(table))
        }
    };

    Ok(match (cli.format, table) {
        (Format::Csv, Some(table)) => table.to_csv(),
        _ => envelope.to_json(),
    })
}

fn tolerances_from(cli: &Cli) -> Result<Tolerances, CliError> {
    for (flag, v) in [
        ("--tol-det", cli.tol_det),
        ("--tol-cls", cli.tol_cls),
        ("--tol-focus", cli.tol_focus),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Usage(format!(
                "{flag} must be a positive number, got {v}"
            )));
        }
    }
    Ok(Tolerances {
        det: cli.tol_det,
        cls: cli.tol_cls,
        focus: cli.tol_focus,
        ..Tolerances::default()
    })
}

fn read_chain(arg: &str, stdin: &mut dyn Read) -> Result<ChainSpec, CliError> {
    if arg == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        Ok(parse_chain(&text)?)
    } else {
        Ok(parse_chain(arg)?)
    }
}

fn chain_inputs(spec: &ChainSpec, degrees: bool) -> Map<String, Value> {
    let mut inputs = Map::new();
    inputs.insert("chain".into(), Value::String(spec.render()));
    inputs.insert("elements".into(), json!(spec.elements().len()));
    inputs.insert(
        "angle_unit".into(),
        json!(if degrees { "degrees" } else { "radians" }),
    );
    inputs
}

fn class_json(class: &ConjugacyClass) -> Value {
    json!({ "tag": class.tag.name(), "trace": num(class.trace) })
}

fn compose_cmd(
    spec: &ChainSpec,
    degrees: bool,
    tol: &Tolerances,
) -> Result<OutputEnvelope, CliError> {
    let product = compose(&spec.matrices(degrees, tol)?, tol)?;
    let class = if product.is_real(tol.det) {
        class_json(&classify_real(&product, tol)?)
    } else {
        Value::Null
    };
    Ok(OutputEnvelope {
        command: "compose".into(),
        inputs: Value::Object(chain_inputs(spec, degrees)),
        results: json!({
            "matrix": sl2c_matrix(&product),
            "det": complex(product.det()),
            "trace": complex(product.trace()),
            "class": class,
        }),
        tolerances: tolerances(tol),
    })
}

fn lift_cmd(spec: &ChainSpec, degrees: bool, tol: &Tolerances) -> Result<OutputEnvelope, CliError> {
    let product = compose(&spec.matrices(degrees, tol)?, tol)?;
    let lorentz = lift(&product, tol)?;
    Ok(OutputEnvelope {
        command: "lift".into(),
        inputs: Value::Object(chain_inputs(spec, degrees)),
        results: json!({
            "sl2c": sl2c_matrix(&product),
            "lorentz": lorentz_matrix(&lorentz),
            "metric_defect": num(lorentz.metric_defect()),
        }),
        tolerances: tolerances(tol),
    })
}

struct StokesStep {
    element: String,
    stokes: StokesVector,
    report: MixednessReport,
}

fn stokes_cmd(
    spec: &ChainSpec,
    input: &[f64],
    coherence: Option<f64>,
    degrees: bool,
    tol: &Tolerances,
) -> Result<(OutputEnvelope, Table), CliError> {
    let [s0, s1, s2, s3] = <[f64; 4]>::try_from(input).map_err(|_| {
        CliError::Usage(format!("--in needs exactly 4 numbers, got {}", input.len()))
    })?;
    let mut state = StokesVector::new(s0, s1, s2, s3)?;
    if let Some(r) = coherence {
        state = stokes_from_coherency(&decohere(&coherency_from_stokes(&state)?, r)?);
    }

    let mut steps = vec![StokesStep {
        element: "input".into(),
        stokes: state,
        report: mixedness(&state, tol)?,
    }];
    for (element, matrix) in spec.elements().iter().zip(spec.matrices(degrees, tol)?) {
        state = apply_mueller(&mueller_from_sl2c(&matrix, tol)?, &state)?;
        steps.push(StokesStep {
            element: element.to_string(),
            stokes: state,
            report: mixedness(&state, tol)?,
        });
    }

    let mut inputs = chain_inputs(spec, degrees);
    inputs.insert("in".into(), nums(input));
    inputs.insert("decohere".into(), coherence.map_or(Value::Null, num));

    let rows: Vec<Value> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "step": i,
                "element": s.element,
                "stokes": nums(&s.stokes.to_array()),
                "m_squared": num(s.report.m_squared),
                "ratio": num(s.report.ratio),
                "class": s.report.class.name(),
            })
        })
        .collect();

    let table = Table {
        header: [
            "step",
            "element",
            "s0",
            "s1",
            "s2",
            "s3",
            "m_squared",
            "ratio",
            "class",
        ]
        .map(String::from)
        .to_vec(),
        rows: steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row = vec![i.to_string(), s.element.clone()];
                row.extend(s.stokes.to_array().iter().map(|v| format_number(*v)));
                row.push(format_number(s.report.m_squared));
                row.push(format_number(s.report.ratio));
                row.push(s.report.class.name().into());
                row
            })
            .collect(),
    };

    let envelope = OutputEnvelope {
        command: "stokes".into(),
        inputs: Value::Object(inputs),
        results: json!({ "steps": rows }),
        tolerances: tolerances(tol),
    };
    Ok((envelope, table))
}

fn decomposition_json(d: &WignerDecomposition, error: f64) -> Value {
    let mut out = Map::new();
    out.insert("tag".into(), json!(d.tag().name()));
    out.insert("particle_label".into(), json!(d.particle_label().name()));
    match *d {
        WignerDecomposition::Elliptic { eta, phi } => {
            out.insert("eta".into(), num(eta));
            out.insert("phi".into(), num(phi));
        }
        WignerDecomposition::Hyperbolic { eta, chi } => {
            out.insert("eta".into(), num(eta));
            out.insert("chi".into(), num(chi));
        }
        WignerDecomposition::Parabolic { gamma } => {
            out.insert("gamma".into(), num(gamma));
        }
    }
    out.insert("reconstruction_error".into(), num(error));
    Value::Object(out)
}

fn lens_cmd(
    z1: f64,
    z2: f64,
    f: f64,
    force: bool,
    tol: &Tolerances,
) -> Result<OutputEnvelope, CliError> {
    let sys = OneLensSystem::new(z1, z2, f)?;
    let equal_arms = z1 == z2;
    if force && !equal_arms {
        return Err(CliError::Usage(
            "--decompose needs equal arms (z1 = z2); unequal-arm decomposition is not supported"
                .into(),
        ));
    }
    let matrix = one_lens_chain(&sys);
    matrix.validate(tol)?;
    let focused = is_focused(&sys, tol.focus)?;

    let core = if equal_arms {
        let renorm = renormalize_core(z1, f)?;
        let core_matrix = renorm.core.to_ray_matrix();
        core_matrix.validate(tol)?;
        let class = classify_real(&core_matrix.to_sl2c(tol)?, tol)?;
        let decomposition = match decompose(&renorm.core, tol) {
            Ok(d) => {
                let rebuilt = reconstruct(&d);
                rebuilt.validate(tol)?;
                decomposition_json(&d, rebuilt.max_abs_diff(&core_matrix))
            }
            Err(err) if force => return Err(err.into()),
            Err(_) => Value::Null,
        };
        json!({
            "x": num(renorm.x),
            "scale": num(renorm.scale),
            "matrix": ray_matrix(&core_matrix),
            "class": class_json(&class),
            "decomposition": decomposition,
        })
    } else {
        Value::Null
    };

    Ok(OutputEnvelope {
        command: "lens".into(),
        inputs: json!({
            "z1": num(z1),
            "z2": num(z2),
            "f": num(f),
            "decompose": force,
        }),
        results: json!({
            "matrix": ray_matrix(&matrix),
            "upper_right": num(matrix.b),
            "focused": focused,
            "core": core,
        }),
        tolerances: tolerances(tol),
    })
}

fn contract_cmd(
    side: SideArg,
    eps: &[f64],
    tol: &Tolerances,
) -> Result<(OutputEnvelope, Table), CliError> {
    let side = match side {
        SideArg::Below => Side::Below,
        SideArg::Above => Side::Above,
    };
    let rows = contraction_sweep(eps, side, tol)?;
    let angle_name = match side {
        Side::Below => "phi",
        Side::Above => "chi",
    };
    let cells = |r: &ContractionRow| [r.epsilon, r.x, r.eta, r.angle, r.lower_left, r.upper_right];

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "epsilon": num(r.epsilon),
                "x": num(r.x),
                "eta": num(r.eta),
                "angle_name": angle_name,
                "angle": num(r.angle),
                "lower_left": num(r.lower_left),
                "upper_right": num(r.upper_right),
            })
        })
        .collect();

    let table = Table {
        header: [
            "epsilon",
            "x",
            "eta",
            angle_name,
            "lower_left",
            "upper_right",
        ]
        .map(String::from)
        .to_vec(),
        rows: rows
            .iter()
            .map(|r| cells(r).iter().map(|v| format_number(*v)).collect())
            .collect(),
    };

    let envelope = OutputEnvelope {
        command: "contract".into(),
        inputs: json!({ "side": side.name(), "eps": nums(eps) }),
        results: json!({ "rows": json_rows }),
        tolerances: tolerances(tol),
    };
    Ok((envelope, table))
}
