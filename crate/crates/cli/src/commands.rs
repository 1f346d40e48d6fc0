use serde_json::{json, Value};

use neighsum::existence::{
    count_hypercube, exists_neumann_square, exists_rect, exists_square, exists_strip, exists_torus, hypercube_rule,
    kernel_verdict, rational_solutions_scan, reduced_angle_pairs, spectral_search, sufficient_decomposition,
};
use neighsum::fill::{fill_infinite, fill_semi_infinite, SequencePair, Window};
use neighsum::grid::{build_operator, verify_board};
use neighsum::linalg::kernel_basis;
use neighsum::valuation::{valuation_eta, valuation_omega};
use neighsum::{io, norm, BoardSpec, Boundary, Error, ExistenceVerdict, IntGrid, Mode, Neighbourhood, Result};

use crate::args::{BoardFormat, Command, CountFormat, Family, FamilyArgs, FillMode, Method, ModeArg, NeighbourhoodArg};

/// Text for stdout and whether the answer was positive (exit 0) or a clean
/// negative (exit 1).
pub struct Output {
    pub text: String,
    pub positive: bool,
}

impl Output {
    fn yes(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            positive: true,
        }
    }

    fn with(text: impl Into<String>, positive: bool) -> Self {
        Self {
            text: text.into(),
            positive,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

fn to_json(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Exists { board, method } => exists(&board, method),
        Command::Kernel { board } => {
            let spec = family_spec(&board)?;
            Ok(Output::yes(to_json(&io::kernel_to_json(&kernel_basis(
                &build_operator(&spec),
            )))))
        }
        Command::Count {
            d,
            n,
            n_range,
            format,
            threads,
        } => count(d, n, n_range, format, threads),
        Command::Gm { m } => Ok(Output::yes(norm::g(m)?.to_string())),
        Command::Valuation { eta, omega: _, m } => {
            let v = if eta { valuation_eta(m)? } else { valuation_omega(m)? };
            Ok(Output::yes(v.to_string()))
        }
        Command::Decompose { n, d } => Ok(match sufficient_decomposition(n, d)? {
            Some(moduli) => Output::yes(moduli.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            None => Output::with("none", false),
        }),
        Command::Fill {
            mode,
            rows,
            cols,
            cross,
            window,
            bounds,
            format,
        } => {
            let grid = match mode {
                FillMode::Semi => {
                    let (Some(rows), Some(cols)) = (rows, cols) else {
                        return usage("semi-infinite fills need --rows and --cols");
                    };
                    let Some((r, c)) = window else {
                        return usage("semi-infinite fills need --window");
                    };
                    let seqs = SequencePair::new(
                        io::parse_sequence(&read_file(&rows)?)?,
                        io::parse_sequence(&read_file(&cols)?)?,
                    )?;
                    fill_semi_infinite(&seqs, r, c)?
                }
                FillMode::Infinite => {
                    let Some(cross) = cross else {
                        return usage("infinite fills need --cross");
                    };
                    let cross = io::parse_cross(&read_file(&cross)?)?;
                    let window = match (window, bounds) {
                        (_, Some([row_min, row_max, col_min, col_max])) => Window {
                            row_min,
                            row_max,
                            col_min,
                            col_max,
                        },
                        (Some((r, c)), None) => Window::centred(r, c),
                        (None, None) => return usage("infinite fills need --window or --bounds"),
                    };
                    fill_infinite(&cross, window)?
                }
            };
            Ok(Output::yes(format_board(&grid, format)?))
        }
        Command::Verify {
            board,
            family,
            dims,
            neighbourhood,
            mode,
        } => verify(&board, family, dims, neighbourhood, mode),
        Command::Render { board } => Ok(Output::yes(io::render_ascii(&io::board_from_str(&read_file(&board)?)?))),
        Command::ScanRational { nmax } => {
            let solutions = rational_solutions_scan(nmax);
            let reduced: Vec<Value> = reduced_angle_pairs(&solutions)
                .into_iter()
                .map(|((a, b), (c, d))| json!([format!("{a}/{b}"), format!("{c}/{d}")]))
                .collect();
            Ok(Output::yes(to_json(
                &json!({ "solutions": solutions, "reduced": reduced }),
            )))
        }
    }
}

fn format_board(grid: &IntGrid, format: BoardFormat) -> Result<String> {
    match format {
        BoardFormat::Json => Ok(to_json(&io::board_to_json(grid))),
        BoardFormat::Csv => io::board_to_csv(grid),
        BoardFormat::Ascii => Ok(io::render_ascii(grid)),
    }
}

fn side(dims: &[usize], family: &str) -> Result<usize> {
    match dims {
        [n] => Ok(*n),
        [m, n] if m == n => Ok(*n),
        _ => usage(format!("{family} needs --dims n, got {dims:?}")),
    }
}

fn pair(dims: &[usize], family: &str) -> Result<(usize, usize)> {
    match dims {
        [m, n] => Ok((*m, *n)),
        _ => usage(format!("{family} needs --dims m,n, got {dims:?}")),
    }
}

fn hypercube_shape(args: &FamilyArgs) -> Result<(usize, u32)> {
    match (args.dims.as_slice(), args.d) {
        ([n], Some(d)) => Ok((*n, d)),
        (dims, d)
            if dims.len() >= 2 && dims.iter().all(|&x| x == dims[0]) && d.is_none_or(|d| d as usize == dims.len()) =>
        {
            Ok((dims[0], dims.len() as u32))
        }
        _ => usage(format!(
            "hypercube needs --dims n with --d, or d equal sides, got {:?}",
            args.dims
        )),
    }
}

fn family_spec(args: &FamilyArgs) -> Result<BoardSpec> {
    let dims = &args.dims;
    match args.family {
        Family::Square => {
            let n = side(dims, "square")?;
            BoardSpec::flat_moore(vec![n, n])
        }
        Family::Rect => {
            let (m, n) = pair(dims, "rect")?;
            BoardSpec::flat_moore(vec![m, n])
        }
        Family::Strip => match dims.as_slice() {
            [m] | [m, 1] => BoardSpec::flat_moore(vec![*m, 1]),
            _ => usage(format!("strip needs --dims m, got {dims:?}")),
        },
        Family::Torus => {
            let (m, n) = pair(dims, "torus")?;
            BoardSpec::torus_moore(m, n)
        }
        Family::NeumannSquare => {
            let n = side(dims, "neumann-square")?;
            BoardSpec::flat_neumann(vec![n, n])
        }
        Family::Hypercube => {
            let (n, d) = hypercube_shape(args)?;
            BoardSpec::flat_moore(vec![n; d as usize])
        }
        Family::HarmonicTorus => {
            let (m, n) = pair(dims, "harmonic-torus")?;
            BoardSpec::harmonic_torus(m, n)
        }
    }
}

fn rule_verdict(args: &FamilyArgs) -> Result<ExistenceVerdict> {
    let spec = family_spec(args)?;
    let dims: Vec<u64> = spec.dims().iter().map(|&x| x as u64).collect();
    match args.family {
        Family::Square => exists_square(dims[0]),
        Family::Rect => exists_rect(dims[0], dims[1]),
        Family::Strip => exists_strip(dims[0]),
        Family::Torus => exists_torus(dims[0], dims[1]),
        Family::NeumannSquare => exists_neumann_square(dims[0]),
        Family::Hypercube => hypercube_rule(dims[0], dims.len() as u32),
        // constants are always harmonic
        Family::HarmonicTorus => Ok(ExistenceVerdict {
            exists: true,
            rule: "harmonic-torus".into(),
            certificate: None,
        }),
    }
}

fn exists(args: &FamilyArgs, method: Method) -> Result<Output> {
    let verdict = match method {
        Method::Rule => rule_verdict(args)?,
        Method::Spectral => spectral_search(&family_spec(args)?)?,
        Method::Kernel => kernel_verdict(&family_spec(args)?),
        Method::All => {
            let spec = family_spec(args)?;
            let verdicts = [
                ("rule", rule_verdict(args)?),
                ("spectral", spectral_search(&spec)?),
                ("kernel", kernel_verdict(&spec)),
            ];
            let agree = verdicts.iter().all(|(_, v)| v.exists == verdicts[0].1.exists);
            let mut out = serde_json::Map::new();
            out.insert("agree".into(), Value::Bool(agree));
            out.insert(
                "exists".into(),
                if agree {
                    Value::Bool(verdicts[0].1.exists)
                } else {
                    Value::Null
                },
            );
            for (name, v) in &verdicts {
                out.insert((*name).into(), io::verdict_to_json(v));
            }
            return Ok(Output::with(to_json(&Value::Object(out)), agree));
        }
    };
    Ok(Output::with(to_json(&io::verdict_to_json(&verdict)), verdict.exists))
}

fn count(
    d: u32,
    n: Option<u64>,
    range: Option<(u64, u64)>,
    format: Option<CountFormat>,
    threads: Option<usize>,
) -> Result<Output> {
    let (lo, hi) = match (n, range) {
        (Some(n), None) => (n, n),
        (None, Some(r)) => r,
        _ => return usage("count needs exactly one of --n and --n-range"),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return usage("--threads must be positive");
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let records = pool.install(|| (lo..=hi).map(|n| count_hypercube(n, d)).collect::<Result<Vec<_>>>())?;
    let format = format.unwrap_or(if range.is_some() {
        CountFormat::Csv
    } else {
        CountFormat::Json
    });
    let text = match (format, range) {
        (CountFormat::Json, None) => to_json(&io::count_to_json(&records[0])),
        (CountFormat::Json, Some(_)) => to_json(&Value::Array(records.iter().map(io::count_to_json).collect())),
        (CountFormat::Csv, _) => records
            .iter()
            .map(|r| r.count.to_string())
            .collect::<Vec<_>>()
            .join(","),
    };
    Ok(Output::yes(text))
}

fn verify(
    path: &str,
    family: Family,
    dims: Vec<usize>,
    neighbourhood: NeighbourhoodArg,
    mode: ModeArg,
) -> Result<Output> {
    let grid = io::board_from_str(&read_file(path)?)?;
    if !dims.is_empty() {
        let expected = family_spec(&FamilyArgs { family, dims, d: None })?;
        if expected.dims() != grid.dims() {
            return usage(format!(
                "board dims {:?} differ from {:?}",
                grid.dims(),
                expected.dims()
            ));
        }
    }
    let boundary = match family {
        Family::Torus | Family::HarmonicTorus => Boundary::Periodic,
        _ => Boundary::Flat,
    };
    let neighbourhood = match neighbourhood {
        NeighbourhoodArg::Moore => Neighbourhood::Moore,
        NeighbourhoodArg::Neumann => Neighbourhood::Neumann,
    };
    let mode = match mode {
        ModeArg::Sum => Mode::Sum,
        ModeArg::Average => Mode::Average,
    };
    let spec = BoardSpec::new(
        grid.dims().to_vec(),
        vec![boundary; grid.dims().len()],
        neighbourhood,
        mode,
    )?;
    let violations = verify_board(&grid, &spec)?;
    Ok(Output::with(
        to_json(&io::violations_to_json(&violations)),
        violations.is_empty(),
    ))
}
