use chrono::{DateTime, Datelike, NaiveDate, TimeZone, Utc};

use super::config::{TimeInterval, TimeOption};
use super::Dot;
use crate::eventlog::Millis;

/// Upper bound on gridlines returned for one window.
pub const MAX_GRIDLINES: usize = 10_000;

const SECOND: i64 = 1_000;
const MINUTE: i64 = 60 * SECOND;
const HOUR: i64 = 60 * MINUTE;
const DAY: i64 = 24 * HOUR;
const WEEK: i64 = 7 * DAY;
/// 1970-01-05, the first Monday after the epoch.
const FIRST_MONDAY: i64 = 4 * DAY;

/// Sets `t_display` on one timeline's dots (sorted by `t_actual`).
///
/// Relative modes measure from the line's first dot; ratio mode also scales
/// so the last dot lands on `window_ms`, rounding to the nearest millisecond.
pub fn transform_times(dots: &mut [Dot], option: TimeOption, window_ms: i64) {
    let (Some(first), Some(last)) = (dots.first(), dots.last()) else {
        return;
    };
    let (first, last) = (first.t_actual, last.t_actual);
    for dot in dots.iter_mut() {
        dot.t_display = match option {
            TimeOption::Actual => dot.t_actual,
            TimeOption::RelativeTime => dot.t_actual - first,
            TimeOption::RelativeRatio => {
                let span = (last - first) as i128;
                if span == 0 {
                    0
                } else {
                    let offset = (dot.t_actual - first) as i128 * window_ms as i128;
                    ((offset + span / 2) / span) as i64
                }
            }
        };
    }
}

fn next_multiple(t: i64, origin: i64, step: i64) -> i64 {
    origin + (t - origin + step - 1).div_euclid(step) * step
}

fn fixed_step(interval: TimeInterval) -> Option<(i64, i64)> {
    Some(match interval {
        TimeInterval::Seconds => (SECOND, 0),
        TimeInterval::Minutes => (MINUTE, 0),
        TimeInterval::HalfHours => (30 * MINUTE, 0),
        TimeInterval::Hours => (HOUR, 0),
        TimeInterval::Days => (DAY, 0),
        TimeInterval::Weeks => (WEEK, FIRST_MONDAY),
        _ => return None,
    })
}

/// Gridline times within `[t0, t0 + window_ms]`, inclusive.
///
/// Millisecond grids count from `t0`. Calendar grids fall on UTC boundaries
/// (weeks start on Monday). At most [`MAX_GRIDLINES`] are returned.
pub fn gridlines(t0: Millis, window_ms: i64, interval: TimeInterval) -> Vec<Millis> {
    let end = t0.saturating_add(window_ms.max(0));
    let mut out = Vec::new();
    let mut push_steps = |start: i64, step: i64| {
        let mut t = start;
        while t <= end && out.len() < MAX_GRIDLINES {
            out.push(t);
            t += step;
        }
    };
    match interval {
        TimeInterval::L1 => push_steps(t0, 1),
        TimeInterval::L10 => push_steps(t0, 10),
        TimeInterval::L100 => push_steps(t0, 100),
        TimeInterval::L500 => push_steps(t0, 500),
        TimeInterval::Months | TimeInterval::Years => {
            let yearly = interval == TimeInterval::Years;
            let Some(start) = DateTime::<Utc>::from_timestamp_millis(t0) else {
                return out;
            };
            let (mut year, mut month) = (start.year(), if yearly { 1 } else { start.month() });
            loop {
                let boundary = NaiveDate::from_ymd_opt(year, month, 1)
                    .and_then(|d| d.and_hms_opt(0, 0, 0))
                    .map(|d| Utc.from_utc_datetime(&d).timestamp_millis());
                let Some(boundary) = boundary else { break };
                if boundary > end || out.len() >= MAX_GRIDLINES {
                    break;
                }
                if boundary >= t0 {
                    out.push(boundary);
                }
                if yearly || month == 12 {
                    year += 1;
                    month = 1;
                } else {
                    month += 1;
                }
            }
        }
        fixed => {
            let (step, origin) = fixed_step(fixed).expect("fixed-length interval");
            push_steps(next_multiple(t0, origin, step), step);
        }
    }
    out
}
