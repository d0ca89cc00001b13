//! Command-line front end. Every subcommand runs one operation or sweep and
//! writes a single artifact; JSON results are wrapped in an [`Envelope`] and
//! CSV/OBJ artifacts start with `#` comment lines carrying the same
//! schema version and constants.
//!
//! CSV columns per subcommand:
//!
//! | subcommand            | columns                                  |
//! |-----------------------|------------------------------------------|
//! | `lattice`             | `t,x,y,z,beta`                           |
//! | `doppler`             | `beta,phi,lambda_obs`                    |
//! | `momentum`            | `beta,p,lambda_B` (`inf` when at rest)   |
//! | `energy`              | `beta,E1,E2,dE,Em`                       |
//! | `waves-residual`      | `x,t,amplitude`                          |
//! | `deflect`             | `lambda_mass,lambda_i,r,term1,term2,total` |
//! | `compton`             | the trace fields, then `oracle_shift,deviation_total` |
//! | `involute curve`      | `omega,x,y` or `omega,x,y,z` (helicoid)  |

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compton::{run_pipeline, ComptonReport};
use crate::constants::Constants;
use crate::deflection::{gr_deflection, wave_deflection, DeflectionCase, ExtendedDeflection};
use crate::error::{Error, Result};
use crate::gravity::{
    decompose_n, fifth_interaction_force, maximass, terminal_report, wave_gravity_force, MassPair,
};
use crate::involute::{
    build_mesh, doppler_deformed_involute, eccentricity, helicoid, pair_create, plane_involute,
    resonance_radius, Chirality, InvoluteSpec,
};
use crate::kinematics::{
    de_broglie_wavelength, doppler_wavelength, energy_pair, wave_momentum, EnergyPair,
};
use crate::lattice::enumerate_vectors;
use crate::output::{provenance_lines, write_json, CsvWriter, Envelope, SCHEMA_VERSION};
use crate::particle::{mass_from_wavelength, rest_wavelength, Species};
use crate::waves::{
    boosted_field, hamilton_jacobi_analytic, hamilton_jacobi_convergence, klein_gordon_analytic,
    klein_gordon_max, klein_gordon_residual, ConvergenceReport, Grid, WaveField,
};

#[derive(Debug, Parser)]
#[command(name = "wft-lab", version, about = "Wave-field kinematics laboratory")]
pub struct Cli {
    /// Constants file (`key = value` lines); falls back to $WFT_LAB_CONSTANTS, then built-in values.
    #[arg(long, global = true, value_name = "FILE")]
    pub constants: Option<PathBuf>,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the artifact here instead of standard output.
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Obj,
}

/// Selects the wave source: a named particle, a rest mass or a rest wavelength.
/// Defaults to the electron.
#[derive(Debug, Clone, Args)]
pub struct Source {
    #[arg(long, value_name = "NAME")]
    pub particle: Option<Species>,
    /// Rest mass in kg.
    #[arg(long)]
    pub m0: Option<f64>,
    /// Rest wavelength h/(m0·c) in m.
    #[arg(long)]
    pub lambda0: Option<f64>,
}

impl Source {
    /// `(m0, λ0)`.
    fn resolve(&self, k: &Constants) -> Result<(f64, f64)> {
        match (self.particle, self.m0, self.lambda0) {
            (None, None, None) => {
                let m = Species::Electron.mass();
                Ok((m, rest_wavelength(k, m)?))
            }
            (Some(s), None, None) => Ok((s.mass(), rest_wavelength(k, s.mass())?)),
            (None, Some(m), None) => Ok((m, rest_wavelength(k, m)?)),
            (None, None, Some(l)) => Ok((mass_from_wavelength(k, l)?, l)),
            _ => Err(Error::Validation(
                "give at most one of --particle, --m0, --lambda0".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate integer light-cone vectors up to a time coordinate.
    Lattice {
        #[arg(long)]
        t_max: i64,
    },
    /// Observed wavelength over a grid of speeds and angles.
    Doppler {
        #[arg(long)]
        lambda_emit: f64,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        beta: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0",
            allow_hyphen_values = true
        )]
        phi: Vec<f64>,
    },
    /// Wave momentum and de Broglie wavelength.
    Momentum {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<f64>,
    },
    /// Forward/backward wave energies.
    Energy {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<f64>,
    },
    /// Finite-difference residuals of the phase equations (CSV: field samples).
    WavesResidual {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Grid points per rest wavelength; the step is λ0 divided by this.
        #[arg(long, default_value_t = 200.0)]
        steps_per_wavelength: f64,
        /// Window size in rest wavelengths (and rest periods).
        #[arg(long, default_value_t = 3.0)]
        wavelengths: f64,
    },
    /// Light deflection by a mass, optionally with the photon-wavelength term.
    Deflect {
        /// Deflector mass in kg.
        #[arg(long, conflicts_with = "lambda_mass")]
        mass: Option<f64>,
        /// Deflector rest wavelength in m.
        #[arg(long)]
        lambda_mass: Option<f64>,
        /// Closest approach in m.
        #[arg(long)]
        r: f64,
        /// Photon wavelengths in m.
        #[arg(long, value_delimiter = ',')]
        lambda_i: Vec<f64>,
    },
    /// Two-stage scattering pipeline.
    Compton {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda_i: Vec<f64>,
        /// Scattering angle in radians.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Involute geometry.
    #[command(subcommand)]
    Involute(InvoluteCommand),
    /// Wave-gravity force between two masses.
    Gravity {
        #[arg(long)]
        m_a: f64,
        #[arg(long)]
        m_b: f64,
        #[arg(long)]
        r: f64,
    },
    /// Terminal speed of a particle.
    Terminal {
        #[command(flatten)]
        source: Source,
    },
    /// Wave-gravity force with the repulsive correction.
    Fifth {
        #[arg(long, required_unless_present = "m_a")]
        lambda_a: Option<f64>,
        #[arg(long, conflicts_with = "lambda_a")]
        m_a: Option<f64>,
        #[arg(long, required_unless_present = "m_b")]
        lambda_b: Option<f64>,
        #[arg(long, conflicts_with = "lambda_b")]
        m_b: Option<f64>,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
    },
    /// Mass whose rest wavelength equals the terminal length.
    Maximass,
    /// Decomposition of the wavefront-number coefficient.
    DecomposeN,
}

#[derive(Debug, Clone, Args)]
pub struct Geometry {
    #[command(flatten)]
    pub source: Source,
    /// Base-circle radius in m; overrides the source.
    #[arg(long)]
    pub r0: Option<f64>,
    /// Resonance index n in r0 = n·λ0/(2π).
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub turns: u32,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// +1 or -1.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub chirality: i64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi_motion: f64,
}

impl Geometry {
    fn spec(&self, k: &Constants) -> Result<InvoluteSpec> {
        if self.turns == 0 {
            return Err(Error::Validation("--turns must be at least 1".into()));
        }
        let r0 = match self.r0 {
            Some(r0) => r0,
            None => resonance_radius(self.source.resolve(k)?.1, self.n)?,
        };
        InvoluteSpec {
            k_max: self.turns - 1,
            mu: self.mu,
            chirality: Chirality::from_sign(self.chirality)?,
            beta: self.beta,
            phi_motion: self.phi_motion,
            samples_per_turn: self.samples,
            ..InvoluteSpec::new(r0)?
        }
        .validated()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Plane,
    Helicoid,
    Deformed,
}

#[derive(Debug, Subcommand)]
pub enum InvoluteCommand {
    /// Sampled polyline.
    Curve {
        #[command(flatten)]
        geometry: Geometry,
        #[arg(long, value_enum, default_value = "plane")]
        kind: CurveKind,
    },
    /// Triangulated spherical-involute surface.
    Mesh {
        #[command(flatten)]
        geometry: Geometry,
        /// Number of helix-angle rows (odd, at least 3).
        #[arg(long, default_value_t = 9)]
        mu_steps: usize,
    },
    /// Mirror pair created by a photon.
    Pair {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lambda_i: f64,
    },
    /// Centroid offset of one turn starting at the given parameter.
    Eccentricity {
        #[command(flatten)]
        geometry: Geometry,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lattice { .. } => "lattice",
            Command::Doppler { .. } => "doppler",
            Command::Momentum { .. } => "momentum",
            Command::Energy { .. } => "energy",
            Command::WavesResidual { .. } => "waves-residual",
            Command::Deflect { .. } => "deflect",
            Command::Compton { .. } => "compton",
            Command::Involute(InvoluteCommand::Curve { .. }) => "involute curve",
            Command::Involute(InvoluteCommand::Mesh { .. }) => "involute mesh",
            Command::Involute(InvoluteCommand::Pair { .. }) => "involute pair",
            Command::Involute(InvoluteCommand::Eccentricity { .. }) => "involute eccentricity",
            Command::Gravity { .. } => "gravity",
            Command::Terminal { .. } => "terminal",
            Command::Fifth { .. } => "fifth",
            Command::Maximass => "maximass",
            Command::DecomposeN => "decompose-n",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Lattice { .. }
            | Command::Doppler { .. }
            | Command::Momentum { .. }
            | Command::Energy { .. }
            | Command::Involute(InvoluteCommand::Curve { .. }) => Format::Csv,
            Command::Deflect { lambda_i, .. } if lambda_i.len() > 1 => Format::Csv,
            Command::Compton { lambda_i, .. } if lambda_i.len() > 1 => Format::Csv,
            Command::Involute(InvoluteCommand::Mesh { .. }) => Format::Obj,
            _ => Format::Json,
        }
    }

    fn formats(&self) -> &'static [Format] {
        match self {
            Command::Involute(InvoluteCommand::Mesh { .. }) => &[Format::Obj],
            Command::Involute(
                InvoluteCommand::Pair { .. } | InvoluteCommand::Eccentricity { .. },
            )
            | Command::Gravity { .. }
            | Command::Terminal { .. }
            | Command::Fifth { .. }
            | Command::Maximass
            | Command::DecomposeN => &[Format::Json],
            _ => &[Format::Json, Format::Csv],
        }
    }
}

/// Runs the command in `cli` and writes its artifact to `out`, ignoring
/// `cli.output` (the binary handles the destination).
pub fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<()> {
    let k = Constants::resolve(cli.constants.as_deref())?;
    let cmd = &cli.command;
    let format = cli.format.unwrap_or_else(|| cmd.default_format());
    if !cmd.formats().contains(&format) {
        return Err(Error::Validation(format!(
            "`{}` cannot be written as {format:?}",
            cmd.name()
        )));
    }
    Run {
        k,
        name: cmd.name(),
        format,
        out,
    }
    .command(cmd)
}

/// Entry point used by the binary: dispatches into the `--output` file or
/// standard output.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            dispatch(cli, &mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = BufWriter::new(stdout.lock());
            dispatch(cli, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

struct Run<'w, W: Write> {
    k: Constants,
    name: &'static str,
    format: Format,
    out: &'w mut W,
}

#[derive(Serialize)]
struct LatticeRow {
    t: i64,
    x: i64,
    y: i64,
    z: i64,
    beta: f64,
}

#[derive(Serialize)]
struct DopplerRow {
    lambda_emit: f64,
    beta: f64,
    phi: f64,
    lambda_obs: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct MomentumRow {
    m0: f64,
    lambda0: f64,
    beta: f64,
    p: f64,
    /// `None` (JSON null) at rest.
    lambda_B: Option<f64>,
}

#[derive(Serialize)]
struct EnergyRow {
    beta: f64,
    #[serde(flatten)]
    pair: EnergyPair,
}

#[derive(Serialize)]
struct WavesReport {
    field: WaveField,
    grid: Grid,
    k0_squared: f64,
    hamilton_jacobi: ConvergenceReport,
    hamilton_jacobi_analytic: f64,
    klein_gordon: ConvergenceReport,
    klein_gordon_negative: f64,
    klein_gordon_analytic: f64,
}

#[derive(Serialize)]
struct DeflectReport {
    case: DeflectionCase,
    gr_deflection: Option<f64>,
    wave_deflection: f64,
    extended: Vec<ExtendedDeflection>,
}

#[derive(Serialize)]
struct EccentricityReport {
    spec: InvoluteSpec,
    omega_window_start: f64,
    eccentricity: f64,
    eccentricity_over_r0: f64,
}

#[derive(Serialize)]
struct MaximassReport {
    terminal_length: f64,
    maximass: f64,
}

#[derive(Serialize)]
struct Curve<P: Serialize> {
    spec: InvoluteSpec,
    points: Vec<P>,
}

impl<W: Write> Run<'_, W> {
    fn json<T: Serialize>(&mut self, result: T) -> Result<()> {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.name,
            constants: self.k,
            result,
        };
        write_json(self.out, &env)
    }

    fn csv(&mut self, header: &[&str]) -> Result<CsvWriter<'_, W>> {
        CsvWriter::new(self.out, &provenance_lines(self.name, &self.k), header)
    }

    fn command(&mut self, cmd: &Command) -> Result<()> {
        let k = self.k;
        match cmd {
            Command::Lattice { t_max } => {
                let rows: Vec<LatticeRow> = enumerate_vectors(*t_max)?
                    .iter()
                    .map(|v| {
                        let [x, y, z] = v.spatial();
                        LatticeRow {
                            t: v.t(),
                            x,
                            y,
                            z,
                            beta: v.speed(),
                        }
                    })
                    .collect();
                if self.format == Format::Json {
                    return self.json(rows);
                }
                let mut w = self.csv(&["t", "x", "y", "z", "beta"])?;
                for r in rows {
                    w.row(&[
                        r.t.into(),
                        r.x.into(),
                        r.y.into(),
                        r.z.into(),
                        r.beta.into(),
                    ])?;
                }
                Ok(())
            }
            Command::Doppler {
                lambda_emit,
                beta,
                phi,
            } => {
                let mut rows = Vec::with_capacity(beta.len() * phi.len());
                for &b in beta {
                    for &p in phi {
                        let lambda_obs = doppler_wavelength(*lambda_emit, b, p)?;
                        rows.push(DopplerRow {
                            lambda_emit: *lambda_emit,
                            beta: b,
                            phi: p,
                            lambda_obs,
                        });
                    }
                }
                if self.format == Format::Json {
                    return self.json(rows);
                }
                let mut w = self.csv(&["beta", "phi", "lambda_obs"])?;
                for r in rows {
                    w.row(&[r.beta.into(), r.phi.into(), r.lambda_obs.into()])?;
                }
                Ok(())
            }
            Command::Momentum { source, beta } => {
                let (m0, lambda0) = source.resolve(&k)?;
                let rows = beta
                    .iter()
                    .map(|&b| {
                        Ok(MomentumRow {
                            m0,
                            lambda0,
                            beta: b,
                            p: wave_momentum(&k, m0, b)?,
                            lambda_B: de_broglie_wavelength(lambda0, b)?.value(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if self.format == Format::Json {
                    return self.json(rows);
                }
                let mut w = self.csv(&["beta", "p", "lambda_B"])?;
                for r in rows {
                    let lb = r.lambda_B.unwrap_or(f64::INFINITY);
                    w.row(&[r.beta.into(), r.p.into(), lb.into()])?;
                }
                Ok(())
            }
            Command::Energy { source, beta } => {
                let (_, lambda0) = source.resolve(&k)?;
                let rows = beta
                    .iter()
                    .map(|&b| {
                        Ok(EnergyRow {
                            beta: b,
                            pair: energy_pair(&k, lambda0, b)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if self.format == Format::Json {
                    return self.json(rows);
                }
                let mut w = self.csv(&["beta", "E1", "E2", "dE", "Em"])?;
                for r in rows {
                    let p = r.pair;
                    w.row(&[
                        r.beta.into(),
                        p.E1.into(),
                        p.E2.into(),
                        p.dE.into(),
                        p.Em.into(),
                    ])?;
                }
                Ok(())
            }
            Command::WavesResidual {
                source,
                beta,
                steps_per_wavelength,
                wavelengths,
            } => {
                let (_, lambda0) = source.resolve(&k)?;
                if !(*steps_per_wavelength > 0.0) {
                    return Err(Error::Validation(
                        "--steps-per-wavelength must be positive".into(),
                    ));
                }
                let field = WaveField::new(&k, lambda0, *beta)?;
                let grid = Grid::covering(&field, *wavelengths, lambda0 / steps_per_wavelength);
                if self.format == Format::Csv {
                    return self.field_samples(&field, &grid);
                }
                let report = WavesReport {
                    field,
                    grid,
                    k0_squared: field.k0() * field.k0(),
                    hamilton_jacobi: hamilton_jacobi_convergence(&field, &grid)?,
                    hamilton_jacobi_analytic: hamilton_jacobi_analytic(&field),
                    klein_gordon: klein_gordon_residual(&field, &grid)?,
                    klein_gordon_negative: klein_gordon_max(&field, &grid, true)?,
                    klein_gordon_analytic: klein_gordon_analytic(&field),
                };
                self.json(report)
            }
            Command::Deflect {
                mass,
                lambda_mass,
                r,
                lambda_i,
            } => {
                let case = match (mass, lambda_mass) {
                    (Some(m), None) => {
                        DeflectionCase::from_mass(&k, *m, *r, lambda_i.first().copied())?
                    }
                    (None, Some(l)) => DeflectionCase::from_mass(
                        &k,
                        mass_from_wavelength(&k, *l)?,
                        *r,
                        lambda_i.first().copied(),
                    )?,
                    _ => {
                        return Err(Error::Validation(
                            "give exactly one of --mass, --lambda-mass".into(),
                        ))
                    }
                };
                let lambda_mass = lambda_mass.unwrap_or(case.lambda_mass);
                let extended = lambda_i
                    .iter()
                    .map(|&li| crate::deflection::extended_deflection(&k, lambda_mass, li, *r))
                    .collect::<Result<Vec<_>>>()?;
                if self.format == Format::Csv {
                    if extended.is_empty() {
                        return Err(Error::Validation(
                            "CSV output needs at least one --lambda-i".into(),
                        ));
                    }
                    let mut w =
                        self.csv(&["lambda_mass", "lambda_i", "r", "term1", "term2", "total"])?;
                    for e in extended {
                        w.row(&[
                            e.lambda_mass.into(),
                            e.lambda_i.into(),
                            e.r.into(),
                            e.term1.into(),
                            e.term2.into(),
                            e.total.into(),
                        ])?;
                    }
                    return Ok(());
                }
                let report = DeflectReport {
                    case,
                    gr_deflection: mass.map(|m| gr_deflection(&k, m, *r)).transpose()?,
                    wave_deflection: wave_deflection(&k, lambda_mass, *r)?,
                    extended,
                };
                self.json(report)
            }
            Command::Compton {
                source,
                lambda_i,
                alpha,
            } => {
                let (_, lambda0) = source.resolve(&k)?;
                let reports = lambda_i
                    .iter()
                    .map(|&li| run_pipeline(li, lambda0, *alpha))
                    .collect::<Result<Vec<ComptonReport>>>()?;
                match (self.format, reports.as_slice()) {
                    (Format::Json, [single]) => self.json(single),
                    (Format::Json, _) => self.json(reports),
                    _ => {
                        let mut w = self.csv(&[
                            "lambda_i",
                            "lambda0",
                            "alpha",
                            "v1",
                            "lambda_i1",
                            "r",
                            "lambda_e1",
                            "v2",
                            "lambda_i2",
                            "dlambda_paper",
                            "dlambda_total",
                            "oracle_shift",
                            "deviation_total",
                        ])?;
                        for rep in reports {
                            let t = rep.trace;
                            w.row(&[
                                t.lambda_i.into(),
                                t.lambda0.into(),
                                t.alpha.into(),
                                t.v1.into(),
                                t.lambda_i1.into(),
                                t.r.into(),
                                t.lambda_e1.into(),
                                t.v2.into(),
                                t.lambda_i2.into(),
                                t.dlambda_paper.into(),
                                t.dlambda_total.into(),
                                rep.oracle_shift.into(),
                                rep.deviation_total.into(),
                            ])?;
                        }
                        Ok(())
                    }
                }
            }
            Command::Involute(sub) => self.involute(sub),
            Command::Gravity { m_a, m_b, r } => {
                let pair = MassPair::new(&k, *m_a, *m_b, *r)?;
                self.json(wave_gravity_force(&k, &pair)?)
            }
            Command::Terminal { source } => {
                let (_, lambda0) = source.resolve(&k)?;
                self.json(terminal_report(&k, lambda0)?)
            }
            Command::Fifth {
                lambda_a,
                m_a,
                lambda_b,
                m_b,
                r,
                phi,
            } => {
                let la = match (lambda_a, m_a) {
                    (Some(l), _) => *l,
                    (None, Some(m)) => rest_wavelength(&k, *m)?,
                    (None, None) => unreachable!("clap requires one of --lambda-a, --m-a"),
                };
                let lb = match (lambda_b, m_b) {
                    (Some(l), _) => *l,
                    (None, Some(m)) => rest_wavelength(&k, *m)?,
                    (None, None) => unreachable!("clap requires one of --lambda-b, --m-b"),
                };
                self.json(fifth_interaction_force(&k, la, lb, *r, *phi)?)
            }
            Command::Maximass => {
                let report = MaximassReport {
                    terminal_length: k.terminal_length(),
                    maximass: maximass(&k),
                };
                self.json(report)
            }
            Command::DecomposeN => self.json(decompose_n(&k)),
        }
    }

    fn field_samples(&mut self, field: &WaveField, grid: &Grid) -> Result<()> {
        let h = grid.h;
        let dt = h / self.k.c();
        let nx = ((grid.x_max - grid.x_min) / h).floor() as usize + 1;
        let nt = ((grid.t_max - grid.t_min) / dt).floor() as usize + 1;
        if nx.saturating_mul(nt) > 5_000_000 {
            return Err(Error::Resource(format!(
                "{nx}×{nt} field samples are too many for CSV"
            )));
        }
        let mut w = self.csv(&["x", "t", "amplitude"])?;
        for j in 0..nt {
            let t = grid.t_min + j as f64 * dt;
            for i in 0..nx {
                let x = grid.x_min + i as f64 * h;
                w.row(&[x.into(), t.into(), boosted_field(field, x, t).into()])?;
            }
        }
        Ok(())
    }

    fn involute(&mut self, sub: &InvoluteCommand) -> Result<()> {
        let k = self.k;
        match sub {
            InvoluteCommand::Curve { geometry, kind } => {
                let spec = geometry.spec(&k)?;
                match kind {
                    CurveKind::Plane | CurveKind::Deformed => {
                        let points = if *kind == CurveKind::Plane {
                            plane_involute(&spec)?
                        } else {
                            doppler_deformed_involute(&spec)?
                        };
                        if self.format == Format::Json {
                            return self.json(Curve { spec, points });
                        }
                        let mut w = self.csv(&["omega", "x", "y"])?;
                        for p in points {
                            w.row(&[p.omega.into(), p.x.into(), p.y.into()])?;
                        }
                        Ok(())
                    }
                    CurveKind::Helicoid => {
                        let points = helicoid(&spec, spec.chirality)?;
                        if self.format == Format::Json {
                            return self.json(Curve { spec, points });
                        }
                        let mut w = self.csv(&["omega", "x", "y", "z"])?;
                        for p in points {
                            w.row(&[p.omega.into(), p.x.into(), p.y.into(), p.z.into()])?;
                        }
                        Ok(())
                    }
                }
            }
            InvoluteCommand::Mesh { geometry, mu_steps } => {
                let spec = geometry.spec(&k)?;
                let mesh = build_mesh(&spec, *mu_steps)?;
                let mut comments = provenance_lines(self.name, &k);
                comments.push(format!(
                    "turns = {}, samples_per_turn = {}, mu_steps = {}, chirality = {}",
                    spec.k_max + 1,
                    spec.samples_per_turn,
                    mu_steps,
                    spec.chirality.sign()
                ));
                mesh.write_obj(self.out, spec.r0, &comments)
            }
            InvoluteCommand::Pair { source, lambda_i } => {
                let (_, lambda0) = source.resolve(&k)?;
                self.json(pair_create(*lambda_i, lambda0)?)
            }
            InvoluteCommand::Eccentricity { geometry, start } => {
                let spec = geometry.spec(&k)?;
                let e = eccentricity(&spec, *start)?;
                self.json(EccentricityReport {
                    spec,
                    omega_window_start: *start,
                    eccentricity: e,
                    eccentricity_over_r0: e / spec.r0,
                })
            }
        }
    }
}
