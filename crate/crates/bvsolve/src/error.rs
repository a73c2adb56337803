use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{line}: cannot parse {text:?} as a decimal or p/q scalar", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("{}: {reason}", path.display())]
    Malformed { path: PathBuf, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("{} [{}]", .0, variant_name(.0))]
    Domain(#[from] bvsolve_core::Error),
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn variant_name(e: &bvsolve_core::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split([' ', '{', '('])
        .next()
        .unwrap_or_default()
        .to_string()
}

impl AppError {
    /// 2 for usage and I/O problems, 3 when the input violates a domain constraint.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Domain(_) => 3,
            _ => 2,
        }
    }
}
