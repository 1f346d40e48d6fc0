use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "neighsum", version, about = "Exact analysis of neighbour-sum boards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a nonzero solution exists
    Exists {
        #[command(flatten)]
        board: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Method::Rule)]
        method: Method,
    },
    /// Exact integer kernel of the board's operator
    Kernel {
        #[command(flatten)]
        board: FamilyArgs,
    },
    /// Count eigen-equation solutions on n^d hypercubes
    Count {
        #[arg(long)]
        d: u32,
        #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
        n: Option<u64>,
        /// Inclusive range `a:b`
        #[arg(long, value_parser = parse_range)]
        n_range: Option<(u64, u64)>,
        #[arg(long, value_enum)]
        format: Option<CountFormat>,
        #[arg(long, env = "NEIGHSUM_THREADS")]
        threads: Option<usize>,
    },
    /// The integer g(m)
    Gm {
        #[arg(long)]
        m: u64,
    },
    /// 2-adic valuation of eta_m = 1 + 2cos(2pi/m) or omega_m = 1 - zeta_m
    Valuation {
        #[arg(long, conflicts_with = "omega", required_unless_present = "omega")]
        eta: bool,
        #[arg(long)]
        omega: bool,
        #[arg(long)]
        m: u64,
    },
    /// Moduli of the prime-factor construction for an n^d hypercube
    Decompose {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
    },
    /// Fill a semi-infinite or infinite board from boundary sequences
    Fill {
        #[arg(long, value_enum)]
        mode: FillMode,
        /// First row, one integer per line (semi)
        #[arg(long)]
        rows: Option<String>,
        /// First column, one integer per line (semi)
        #[arg(long)]
        cols: Option<String>,
        /// Sections [a] [b] [c] [d] of `index value` lines (infinite)
        #[arg(long)]
        cross: Option<String>,
        /// Window size `RxC`
        #[arg(long, value_parser = parse_window, required_unless_present = "bounds")]
        window: Option<(usize, usize)>,
        /// Explicit inclusive bounds `r0:r1,c0:c1` (infinite)
        #[arg(long, value_parser = parse_bounds, conflicts_with = "window", allow_hyphen_values = true)]
        bounds: Option<[i64; 4]>,
        #[arg(long, value_enum, default_value_t = BoardFormat::Json)]
        format: BoardFormat,
    },
    /// Check a board against the neighbour-sum property
    Verify {
        #[arg(long)]
        board: String,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = NeighbourhoodArg::Moore)]
        neighbourhood: NeighbourhoodArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Sum)]
        mode: ModeArg,
    },
    /// Print a board as an aligned text grid
    Render {
        #[arg(long)]
        board: String,
    },
    /// Exact solutions of (1 + 2cos(p pi/N))(1 + 2cos(q pi/N)) = 2 for N <= nmax
    ScanRational {
        #[arg(long)]
        nmax: u64,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub dims: Vec<usize>,
    /// Dimension of a hypercube
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Square,
    Rect,
    Strip,
    Torus,
    NeumannSquare,
    Hypercube,
    HarmonicTorus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rule,
    Spectral,
    Kernel,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillMode {
    Semi,
    Infinite,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoardFormat {
    Json,
    Csv,
    Ascii,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighbourhoodArg {
    Moore,
    Neumann,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Sum,
    Average,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad start {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(['x', 'X']).ok_or("expected RxC")?;
    let r: usize = r.trim().parse().map_err(|_| format!("bad row count {r:?}"))?;
    let c: usize = c.trim().parse().map_err(|_| format!("bad column count {c:?}"))?;
    if r == 0 || c == 0 {
        return Err("window must be nonempty".into());
    }
    Ok((r, c))
}

fn parse_bounds(s: &str) -> Result<[i64; 4], String> {
    let (rows, cols) = s.split_once(',').ok_or("expected r0:r1,c0:c1")?;
    let pair = |p: &str| -> Result<(i64, i64), String> {
        let (a, b) = p.split_once(':').ok_or("expected lo:hi")?;
        let a: i64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
        let b: i64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
        if a > b {
            return Err(format!("empty bounds {a}:{b}"));
        }
        Ok((a, b))
    };
    let (r0, r1) = pair(rows)?;
    let (c0, c1) = pair(cols)?;
    Ok([r0, r1, c0, c1])
}
