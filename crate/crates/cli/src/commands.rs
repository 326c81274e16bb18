use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use rayon::prelude::*;
use rnadist_core::codec::{emit_records, parse_dotbracket, parse_records};
use rnadist_core::oracles::{random_structure_with, SplitMix64};
use rnadist_core::{
    d_inv, decompose_orbits, exact_rank, symmetric_difference, transfer_matrix, Format, Metric,
    SecondaryStructure,
};

use crate::error::{CliError, EXIT_INVALID, EXIT_PARSE};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// An existing file is read as a one-record file, anything else as inline dot-bracket.
fn load_structure(arg: &str) -> Result<SecondaryStructure, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        return parse_dotbracket(arg).map_err(|e| CliError::codec(format!("{arg:?}"), e));
    }
    let mut records = parse_records(&read(path)?);
    if records.len() != 1 {
        return Err(CliError::Usage(format!(
            "{arg}: expected exactly one structure, found {}",
            records.len()
        )));
    }
    let record = records.remove(0);
    record.result.map_err(|e| CliError::codec(arg, e))
}

fn load_all(path: &Path) -> Result<Vec<SecondaryStructure>, CliError> {
    parse_records(&read(path)?)
        .into_iter()
        .map(|r| {
            r.result
                .map_err(|e| CliError::codec(format!("{}: record {}", path.display(), r.index), e))
        })
        .collect()
}

pub fn validate(path: &Path, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let records = parse_records(&read(path)?);
    let (mut syntax, mut invalid) = (0, 0);
    for r in &records {
        match &r.result {
            Ok(s) => writeln!(
                out,
                "record {}: valid (n={}, contacts={})",
                r.index,
                s.len(),
                s.num_contacts()
            ),
            Err(e) => {
                if e.is_syntax() {
                    syntax += 1;
                } else {
                    invalid += 1;
                }
                writeln!(
                    out,
                    "{} at record {}, line {}: {e}",
                    e.kind(),
                    r.index,
                    e.line().unwrap_or(r.line)
                )
            }
        }
        .map_err(io_err)?;
    }
    writeln!(
        out,
        "{} of {} records valid",
        records.len() - syntax - invalid,
        records.len()
    )
    .map_err(io_err)?;
    Ok(if syntax > 0 {
        ExitCode::from(EXIT_PARSE)
    } else if invalid > 0 {
        ExitCode::from(EXIT_INVALID)
    } else {
        ExitCode::SUCCESS
    })
}

pub fn dist(a: &str, b: &str, metric: Metric, verbose: bool, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let (a, b) = (load_structure(a)?, load_structure(b)?);
    let value = metric.distance(&a, &b).map_err(CliError::length)?;
    writeln!(out, "{value}").map_err(io_err)?;
    if verbose {
        let symdiff = symmetric_difference(&a, &b).map_err(CliError::length)?.len();
        let omega = decompose_orbits(&a, &b).map_err(CliError::length)?.omega;
        writeln!(out, "metric={metric}\nsymdiff={symdiff}\nomega={omega}").map_err(io_err)?;
        if metric == Metric::Mag {
            let t = transfer_matrix(&a, &b).expect("lengths already checked");
            let rank = exact_rank(&t.minus_identity());
            writeln!(out, "matrix_dim={}\nrank(T-Id)={rank}", t.dim()).map_err(io_err)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn orbits(a: &str, b: &str, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let (a, b) = (load_structure(a)?, load_structure(b)?);
    let decomposition = decompose_orbits(&a, &b).map_err(CliError::length)?;
    for o in &decomposition.orbits {
        let members: Vec<String> = o.members.iter().map(ToString::to_string).collect();
        writeln!(out, "{} [{}] size={}", o.kind, members.join(","), o.size()).map_err(io_err)?;
    }
    let symdiff = decomposition.symmetric_difference_size();
    let d = d_inv(&a, &b).map_err(CliError::length)?;
    writeln!(out, "omega={} symdiff={symdiff} d_inv={d}", decomposition.omega).map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

pub fn matrix(path: &Path, metric: Metric, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let all = load_all(path)?;
    if let Some(first) = all.first() {
        if let Some((k, s)) = all.iter().enumerate().find(|(_, s)| s.len() != first.len()) {
            return Err(CliError::Length(format!(
                "record {} has length {}, record 1 has length {}",
                k + 1,
                s.len(),
                first.len()
            )));
        }
    }
    let m = all.len();
    let rows: Vec<Vec<String>> = (0..m)
        .into_par_iter()
        .map(|r| {
            (0..m)
                .map(|c| {
                    // compute each unordered pair once, in a fixed orientation
                    let (x, y) = if r <= c { (r, c) } else { (c, r) };
                    metric
                        .distance(&all[x], &all[y])
                        .expect("lengths already checked")
                        .to_string()
                })
                .collect()
        })
        .collect();
    let header: Vec<String> = (1..=m).map(|k| k.to_string()).collect();
    writeln!(out, "\t{}", header.join("\t")).map_err(io_err)?;
    for (r, row) in rows.iter().enumerate() {
        writeln!(out, "{}\t{}", r + 1, row.join("\t")).map_err(io_err)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn generate(
    n: usize,
    contacts: usize,
    count: usize,
    seed: u64,
    format: Format,
    out: &mut impl Write,
) -> Result<ExitCode, CliError> {
    let mut rng = SplitMix64::new(seed);
    let structures = (0..count)
        .map(|_| random_structure_with(&mut rng, n, contacts))
        .collect::<Result<Vec<_>, _>>()?;
    let text = emit_records(&structures, format).map_err(|e| CliError::codec("output", e))?;
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: impl FnOnce(&mut Vec<u8>) -> Result<ExitCode, CliError>) -> (Result<ExitCode, CliError>, String) {
        let mut buf = Vec::new();
        let r = f(&mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn dist_inline() {
        let (r, out) = run(|o| dist("(.)(.)(.)", "..(...)..", Metric::Inv, false, o));
        assert!(r.is_ok());
        assert_eq!(out, "4\n");
        let (_, out) = run(|o| dist("(.)(.)(.)", "..(...)..", Metric::Sgr, false, o));
        assert_eq!(out, "2.772588722\n");
    }

    #[test]
    fn orbits_listing() {
        let (_, out) = run(|o| orbits("(.[)].", "..(.).", o));
        // 1·4, 3·5 vs 3·5: shared contact and a linear path 1-4
        assert_eq!(
            out,
            "linear [1,4] size=2\nlinear [2] size=1\ncyclic [3,5] size=2\nlinear [6] size=1\nomega=0 symdiff=1 d_inv=1\n"
        );
    }

    #[test]
    fn gen_is_deterministic() {
        let (_, a) = run(|o| generate(30, 10, 5, 42, Format::PairList, o));
        let (_, b) = run(|o| generate(30, 10, 5, 42, Format::PairList, o));
        assert_eq!(a, b);
        assert_eq!(parse_records(&a).len(), 5);
        let (r, _) = run(|o| generate(2, 1, 1, 0, Format::DotBracket, o));
        assert_eq!(r.unwrap_err().status(), crate::error::EXIT_INFEASIBLE);
    }
}
