use clap::{Parser, Subcommand};
use crtubes::report::{cmd_emit_base, cmd_involutions, cmd_levi_chain, cmd_sphere_tubes};
use std::path::PathBuf;
use std::process::ExitCode;

/// Tube realizations of CR-manifolds: sphere catalogs, hyperquadric
/// involutions, iterated Levi kernels, and base-curve emitters.
#[derive(Parser)]
#[command(name = "crtubes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the r+2 tube realizations of the sphere S^{2r-1}.
    SphereTubes {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classification table of antilinear involutions on the quadric S_{p,q}.
    Involutions {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    /// Iterated Levi kernel chain of a cone tube or Siegel model.
    LeviChain {
        /// model selector: tube-cone or siegel
        #[arg(long)]
        case: String,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
    /// Emit base points (csv) or the base curve (svg, r = 2) of a catalog case.
    EmitBase {
        /// exp, pi-plus (alias trig), or parabolic-<s>
        #[arg(long)]
        case: String,
        #[arg(long)]
        r: usize,
        /// csv or svg
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::SphereTubes {
            r,
            tol,
            samples,
            seed,
        } => cmd_sphere_tubes(r, tol, samples, seed).map(|rep| {
            println!("{}", rep.to_json());
            rep.all_pass()
        }),
        Command::Involutions { p, q, m } => cmd_involutions(p, q, m).map(|rep| {
            println!("{}", rep.to_json());
            rep.all_pass()
        }),
        Command::LeviChain {
            case,
            p,
            q,
            j,
            k,
            kmax,
        } => cmd_levi_chain(&case, p, q, j, k, kmax).map(|rep| {
            println!("{}", rep.to_json());
            rep.all_pass()
        }),
        Command::EmitBase {
            case,
            r,
            format,
            out,
            samples,
            tol,
            seed,
        } => cmd_emit_base(&case, r, &format, samples, tol, seed).and_then(|res| {
            match &out {
                Some(path) => {
                    std::fs::write(path, &res.payload).map_err(|e| {
                        crtubes::report::CliError::BadParameter(format!(
                            "cannot write {}: {e}",
                            path.display()
                        ))
                    })?;
                    println!("{}", res.report.to_json());
                }
                None => print!("{}", res.payload),
            }
            Ok(res.report.all_pass())
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
