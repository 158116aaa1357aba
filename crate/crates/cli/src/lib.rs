//! Front end for the `multicover` solvers: solve one instance, generate
//! instances, benchmark a corpus and report the integrality gap family.

pub mod bench;
pub mod gap;
pub mod run;
pub mod solve;

use std::path::{Path, PathBuf};

use multicover::{Error, Rational};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid epsilon `{0}`; expected a rational p/q")]
    Epsilon(String),
    #[error("output encoding failed: {0}")]
    Encode(String),
    #[error("integrality gap check failed: {0}")]
    GapBound(String),
}

impl CliError {
    /// 2 for unreadable or invalid input, 3 for infeasible instances, 4 for
    /// ε outside its interval, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::InfeasibleInstance { .. } | Error::LpInfeasible => 3,
                Error::EpsilonOutOfRange { .. } => 4,
                Error::Parse { .. }
                | Error::IndexOutOfRange { .. }
                | Error::EmptyEdge { .. }
                | Error::EmptyEdgeList
                | Error::NoVertices
                | Error::DuplicateVertex { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidDemand { .. }
                | Error::InvalidParams(_)
                | Error::GenerationFailed(_) => 2,
                _ => 1,
            },
            CliError::Epsilon(_) => 2,
            CliError::Io { .. } | CliError::Encode(_) | CliError::GapBound(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses an exact rational such as `1/2` or `3`.
pub fn parse_epsilon(s: &str) -> CliResult<Rational> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p = p.trim().parse().map_err(|_| CliError::Epsilon(s.into()))?;
    let q: num_bigint::BigInt = q.trim().parse().map_err(|_| CliError::Epsilon(s.into()))?;
    if q == num_bigint::BigInt::from(0) {
        return Err(CliError::Epsilon(s.into()));
    }
    Ok(Rational::new(p, q))
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when absent.
pub fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_parsing() {
        assert_eq!(
            parse_epsilon("1/2").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            parse_epsilon("2/4").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            parse_epsilon("1").unwrap(),
            Rational::from_integer(1.into())
        );
        for bad in ["0.5", "1/0", "a/b", "", "1/2/3"] {
            assert!(parse_epsilon(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        let parse = CliError::Core(Error::Parse {
            line: 1,
            reason: "x".into(),
        });
        assert_eq!(parse.exit_code(), 2);
        let infeasible = CliError::Core(Error::InfeasibleInstance {
            vertex: 0,
            degree: 1,
            demand: 2,
        });
        assert_eq!(infeasible.exit_code(), 3);
        let eps = CliError::Core(Error::EpsilonOutOfRange {
            epsilon: "1/9".into(),
            low: "1/3".into(),
            k: 2,
            delta: 3,
        });
        assert_eq!(eps.exit_code(), 4);
        assert_eq!(
            CliError::Core(Error::InternalInvariantViolation("x".into())).exit_code(),
            1
        );
    }
}
