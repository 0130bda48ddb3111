use thiserror::Error;

pub type Result<T, E = WalkError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("circle size {0} is odd; the half-step pairs cannot tile the ring")]
    OddCircle(usize),
    #[error("circle size {0} is too small (need at least 4 sites)")]
    CircleTooSmall(usize),
    #[error("initial state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("initial state is empty")]
    EmptyState,
    #[error("non-finite amplitude at site {0}")]
    NonFinite(i64),
    #[error("site {0} appears more than once in the initial state")]
    DuplicateSite(i64),
    #[error("amplitude at site {site} would leave the storage window at t={time}; increase t_max")]
    WindowOverflow { site: i64, time: u64 },
    #[error("site {0} is outside the storage window")]
    SiteOutsideWindow(i64),
    #[error("{0} is not defined on a circle")]
    CircleUnsupported(&'static str),
    #[error(
        "grid of {given} sites is too small; at least {required} are needed to avoid wraparound"
    )]
    GridTooSmall { required: usize, given: usize },
    #[error("grid size {0} must be even and positive")]
    OddGrid(usize),
    #[error("no stationary point for n={n}, t={t}: |n| must be below sqrt(2)*t")]
    NoStationaryPoint { n: f64, t: u64 },
    #[error("argument {arg} is outside the interior region |arg| < sqrt(2)*t for t={t}")]
    OutsideInterior { arg: f64, t: u64 },
    #[error("time must be at least 1")]
    ZeroTime,
    #[error("moment order {0} is not supported (use 0, 1 or 2)")]
    UnsupportedOrder(u32),
    #[error("state has amplitude at site {0}, behind the absorbing wall")]
    BelowWall(i64),
    #[error("absorption series has {0} entries; at least 16 are needed")]
    SeriesTooShort(usize),
    #[error("{0}")]
    Unsupported(String),
}
