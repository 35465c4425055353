use std::io::{self, Write};

use serde::Serialize;

use super::{EpisodeResult, Obstacle, RobotPose, Status};
use crate::brain::{MotorOutput, SensorInput};

/// Everything that happened in one tick.
#[derive(Debug, Clone, PartialEq)]
pub struct TickTrace {
    /// Zero-based tick index within the episode.
    pub tick: u64,
    pub before: RobotPose,
    pub after: RobotPose,
    pub sensors: SensorInput,
    pub motors: MotorOutput,
    /// Obstacles at the end of the tick, after spawning.
    pub obstacles: Vec<Obstacle>,
    /// Status at the end of the tick.
    pub status: Status,
}

/// One JSONL line. Field order here is the on-disk order.
#[derive(Debug, Serialize)]
pub struct TraceRecord {
    pub tick: u64,
    pub row: i64,
    pub left_lane: u8,
    pub altitude: u8,
    pub s1: u8,
    pub s2: u8,
    pub m1: u8,
    pub m2: u8,
    pub m3: u8,
    pub obstacles: Vec<ObstacleRecord>,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct ObstacleRecord {
    pub track: u8,
    pub row: i64,
    pub dir: i8,
}

impl From<&TickTrace> for TraceRecord {
    fn from(t: &TickTrace) -> Self {
        Self {
            tick: t.tick,
            row: t.after.row,
            left_lane: t.after.left_lane,
            altitude: u8::from(t.after.airborne),
            s1: u8::from(t.sensors.s1),
            s2: u8::from(t.sensors.s2),
            m1: u8::from(t.motors.m1),
            m2: u8::from(t.motors.m2),
            m3: u8::from(t.motors.m3),
            obstacles: t
                .obstacles
                .iter()
                .map(|o| ObstacleRecord { track: o.track.number(), row: o.row, dir: o.direction })
                .collect(),
            status: t.status,
        }
    }
}

pub fn write_jsonl<W: Write>(result: &EpisodeResult, mut out: W) -> io::Result<()> {
    for t in &result.trace {
        serde_json::to_writer(&mut out, &TraceRecord::from(t))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_jsonl(result: &EpisodeResult) -> String {
    let mut buf = Vec::new();
    write_jsonl(result, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
