//! Seeded four-lane road game.
//!
//! Lanes are numbered 1 to 4 from the left. The robot is two lanes wide and
//! is described by its left lane (1, 2 or 3). Obstacles live on the terminal
//! lanes only: track 1 is lane 1, track 2 is lane 4. Each obstacle moves one
//! row per tick in a direction fixed when it appears, and the robot advances
//! one row per tick regardless of what its motors do.
//!
//! The left sensor pair reports track 1 and the right pair reports track 2;
//! each pair is an OR over the `detection_window` rows in front of the robot.
//!
//! One [`GameState::step`] runs, in order:
//!
//! 1. sense;
//! 2. ask the brain for a motor command;
//! 3. act (lane shift or take-off, then advance one row);
//! 4. move every obstacle by its direction;
//! 5. check for a collision (same row, occupied lane, robot on the ground);
//! 6. despawn obstacles more than two rows behind, then spawn new ones;
//! 7. declare a win at the finish line or a timeout at `max_ticks`.
//!
//! # Randomness
//!
//! The only random source is a SplitMix64 stream seeded with
//! `config.seed`. Each tick draws exactly four values: for track 1 then
//! track 2, a spawn coin (`u64 >> 11` scaled to `[0, 1)`, spawning when below
//! `spawn_prob`) followed by a direction coin (top bit set means `+1`).
//! Both coins are drawn even when the spawn does not happen.

mod config;
mod trace;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

pub use config::GameConfig;
pub use trace::{to_jsonl, write_jsonl, TickTrace, TraceRecord};

use crate::brain::{Brain, BrainKind, MotorOutput, SensorInput};
use crate::error::{Error, Result};

pub const LANES: u8 = 4;
/// Rows an obstacle may fall behind the robot before it is removed.
pub const DESPAWN_BEHIND: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Running,
    Won,
    Collided,
    TimedOut,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Running => "running",
            Status::Won => "won",
            Status::Collided => "collided",
            Status::TimedOut => "timed_out",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Track {
    /// Lane 1, watched by the left sensors.
    One,
    /// Lane 4, watched by the right sensors.
    Two,
}

impl Track {
    pub fn lane(self) -> u8 {
        match self {
            Track::One => 1,
            Track::Two => LANES,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Track::One => 1,
            Track::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RobotPose {
    pub row: i64,
    /// Leftmost occupied lane; the robot also covers `left_lane + 1`.
    pub left_lane: u8,
    pub airborne: bool,
}

impl RobotPose {
    /// Row 0, centred on lanes 2 and 3, on the ground.
    pub fn start() -> Self {
        Self { row: 0, left_lane: 2, airborne: false }
    }

    pub fn occupies(&self, lane: u8) -> bool {
        lane == self.left_lane || lane == self.left_lane + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Obstacle {
    pub track: Track,
    pub row: i64,
    /// `+1` or `-1` rows per tick.
    pub direction: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeResult {
    pub seed: u64,
    pub status: Status,
    pub ticks_elapsed: u64,
    pub collision_tick: Option<u64>,
    pub trace: Vec<TickTrace>,
}

#[derive(Debug, Clone)]
pub struct GameState {
    config: GameConfig,
    robot: RobotPose,
    obstacles: Vec<Obstacle>,
    rng: SplitMix64,
    tick: u64,
    status: Status,
    trace: Vec<TickTrace>,
}

impl GameState {
    pub fn new(config: GameConfig) -> Result<Self> {
        Self::from_parts(config, RobotPose::start(), Vec::new())
    }

    /// A running game with a chosen robot pose and obstacle set.
    pub fn from_parts(config: GameConfig, robot: RobotPose, obstacles: Vec<Obstacle>) -> Result<Self> {
        config.validate()?;
        if !(1..LANES).contains(&robot.left_lane) {
            return Err(Error::invalid(format!("left_lane {} not in 1..=3", robot.left_lane)));
        }
        if let Some(o) = obstacles.iter().find(|o| o.direction.abs() != 1) {
            return Err(Error::invalid(format!("obstacle direction {} is not +1 or -1", o.direction)));
        }
        let rng = SplitMix64::seed_from_u64(config.seed);
        Ok(Self { config, robot, obstacles, rng, tick: 0, status: Status::Running, trace: Vec::new() })
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn robot(&self) -> RobotPose {
        self.robot
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn trace(&self) -> &[TickTrace] {
        &self.trace
    }

    /// OR over the detection window for each track.
    pub fn sense(&self) -> SensorInput {
        let lo = self.robot.row + 1;
        let hi = self.robot.row + self.config.detection_window as i64;
        let seen = |track| self.obstacles.iter().any(|o| o.track == track && (lo..=hi).contains(&o.row));
        SensorInput::new(seen(Track::One), seen(Track::Two))
    }

    /// Applies a motor command and advances the robot one row.
    ///
    /// Propeller on means airborne with no lane change. Otherwise the robot
    /// lands; `M1` alone shifts one lane right, `M2` alone one lane left,
    /// clamped to the road.
    pub fn act(&mut self, motors: MotorOutput) {
        if motors.m3 {
            self.robot.airborne = true;
        } else {
            self.robot.airborne = false;
            match (motors.m1, motors.m2) {
                (true, false) => self.robot.left_lane = (self.robot.left_lane + 1).min(LANES - 1),
                (false, true) => self.robot.left_lane = (self.robot.left_lane - 1).max(1),
                _ => {}
            }
        }
        self.robot.row += 1;
    }

    fn collided(&self) -> bool {
        !self.robot.airborne
            && self
                .obstacles
                .iter()
                .any(|o| o.row == self.robot.row && self.robot.occupies(o.track.lane()))
    }

    fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Draws the spawn and direction coins for both tracks and inserts
    /// obstacles at `spawn_horizon` rows ahead where allowed.
    pub fn spawn_obstacles(&mut self) {
        let spawn_row = self.robot.row + self.config.spawn_horizon as i64;
        let gap = self.config.min_gap as i64;
        for track in [Track::One, Track::Two] {
            let spawn = self.next_unit() < self.config.spawn_prob;
            let direction = if self.rng.next_u64() >> 63 == 1 { 1 } else { -1 };
            if !spawn {
                continue;
            }
            let crowded = self
                .obstacles
                .iter()
                .any(|o| o.track == track && (o.row - spawn_row).abs() <= gap);
            if !crowded {
                self.obstacles.push(Obstacle { track, row: spawn_row, direction });
            }
        }
    }

    /// Runs one tick with `brain` in control.
    pub fn step(&mut self, brain: &Brain) -> Result<&TickTrace> {
        if self.status != Status::Running {
            return Err(Error::InvalidState(format!("step called on a game that is {}", self.status.name())));
        }
        let before = self.robot;
        let sensors = self.sense();
        let motors = brain.drive(sensors)?;
        self.act(motors);
        for o in &mut self.obstacles {
            o.row += i64::from(o.direction);
        }
        if self.collided() {
            self.status = Status::Collided;
        }
        let cutoff = self.robot.row - DESPAWN_BEHIND;
        self.obstacles.retain(|o| o.row >= cutoff);
        self.spawn_obstacles();

        let tick = self.tick;
        self.tick += 1;
        if self.status == Status::Running {
            if self.robot.row >= self.config.road_length as i64 {
                self.status = Status::Won;
            } else if self.tick >= self.config.max_ticks {
                self.status = Status::TimedOut;
            }
        }
        self.trace.push(TickTrace {
            tick,
            before,
            after: self.robot,
            sensors,
            motors,
            obstacles: self.obstacles.clone(),
            status: self.status,
        });
        Ok(self.trace.last().expect("just pushed"))
    }

    /// Steps until the game ends.
    pub fn run(mut self, brain: &Brain) -> Result<EpisodeResult> {
        while self.status == Status::Running {
            self.step(brain)?;
        }
        let collision_tick = (self.status == Status::Collided).then(|| self.tick - 1);
        Ok(EpisodeResult {
            seed: self.config.seed,
            status: self.status,
            ticks_elapsed: self.tick,
            collision_tick,
            trace: self.trace,
        })
    }
}

pub fn run_episode(config: &GameConfig, kind: BrainKind) -> Result<EpisodeResult> {
    run_episode_with(config, &Brain::new(kind)?)
}

pub fn run_episode_with(config: &GameConfig, brain: &Brain) -> Result<EpisodeResult> {
    GameState::new(config.clone())?.run(brain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> GameConfig {
        GameConfig { spawn_prob: 0.0, ..GameConfig::default() }
    }

    fn at(row: i64, left_lane: u8) -> RobotPose {
        RobotPose { row, left_lane, airborne: false }
    }

    fn obstacle(track: Track, row: i64, direction: i8) -> Obstacle {
        Obstacle { track, row, direction }
    }

    #[test]
    fn sense_empty_road() {
        let g = GameState::new(quiet()).unwrap();
        assert_eq!(g.sense(), SensorInput::new(false, false));
    }

    #[test]
    fn sense_window() {
        let g = GameState::from_parts(quiet(), at(5, 2), vec![obstacle(Track::One, 7, -1)]).unwrap();
        assert_eq!(g.sense(), SensorInput::new(true, false));

        let both = vec![obstacle(Track::One, 6, 1), obstacle(Track::Two, 6, -1)];
        let g = GameState::from_parts(quiet(), at(5, 2), both).unwrap();
        assert_eq!(g.sense(), SensorInput::new(true, true));

        // edges of [row + 1, row + D]
        let edges = vec![obstacle(Track::One, 5, -1), obstacle(Track::Two, 9, -1)];
        let g = GameState::from_parts(quiet(), at(5, 2), edges).unwrap();
        assert_eq!(g.sense(), SensorInput::new(false, false));
        let g = GameState::from_parts(quiet(), at(5, 2), vec![obstacle(Track::Two, 8, 1)]).unwrap();
        assert_eq!(g.sense(), SensorInput::new(false, true));
    }

    #[test]
    fn act_left_turn() {
        let mut g = GameState::from_parts(quiet(), at(3, 2), vec![]).unwrap();
        g.act(MotorOutput::new(false, true, false));
        assert_eq!(g.robot(), at(4, 1));
        g.act(MotorOutput::new(false, true, false));
        assert_eq!(g.robot(), at(5, 1));
    }

    #[test]
    fn act_forward_and_right() {
        let mut g = GameState::from_parts(quiet(), at(0, 2), vec![]).unwrap();
        g.act(MotorOutput::new(true, true, false));
        assert_eq!(g.robot(), at(1, 2));
        g.act(MotorOutput::new(true, false, false));
        assert_eq!(g.robot(), at(2, 3));
        g.act(MotorOutput::new(true, false, false));
        assert_eq!(g.robot(), at(3, 3));
    }

    #[test]
    fn act_take_off_then_land() {
        let mut g = GameState::from_parts(quiet(), at(0, 1), vec![]).unwrap();
        g.act(MotorOutput::new(false, false, true));
        assert_eq!(g.robot(), RobotPose { row: 1, left_lane: 1, airborne: true });
        g.act(MotorOutput::new(true, true, false));
        assert_eq!(g.robot(), at(2, 1));
    }

    #[test]
    fn step_on_empty_road() {
        let brain = Brain::new(BrainKind::Classical).unwrap();
        let mut g = GameState::from_parts(quiet(), at(7, 2), vec![]).unwrap();
        let t = g.step(&brain).unwrap().clone();
        assert_eq!(g.robot(), at(8, 2));
        assert_eq!(g.status(), Status::Running);
        assert_eq!(t.motors, MotorOutput::new(true, true, false));
    }

    #[test]
    fn step_dodges_left_track() {
        let brain = Brain::new(BrainKind::Quantum).unwrap();
        let mut g = GameState::from_parts(quiet(), at(10, 1), vec![obstacle(Track::One, 12, -1)]).unwrap();
        g.step(&brain).unwrap();
        assert_eq!(g.robot(), at(11, 2));
        assert_eq!(g.obstacles(), &[obstacle(Track::One, 11, -1)]);
        assert_eq!(g.status(), Status::Running);
    }

    #[test]
    fn step_flies_over_both_tracks() {
        let brain = Brain::new(BrainKind::Quantum).unwrap();
        let obs = vec![obstacle(Track::One, 12, -1), obstacle(Track::Two, 12, -1)];
        let mut g = GameState::from_parts(quiet(), at(10, 3), obs).unwrap();
        let t = g.step(&brain).unwrap().clone();
        assert_eq!(t.sensors, SensorInput::new(true, true));
        assert!(g.robot().airborne);
        assert_eq!(g.robot().left_lane, 3);
        assert!(g.obstacles().iter().all(|o| o.row == g.robot().row));
        assert_eq!(g.status(), Status::Running);
    }

    #[test]
    fn unsensed_obstacle_collides() {
        // placed directly on the robot's next row: nothing warns it
        let brain = Brain::new(BrainKind::Classical).unwrap();
        let mut g = GameState::from_parts(quiet(), at(10, 1), vec![obstacle(Track::One, 11, 1)]).unwrap();
        // offset 1 is inside the window, so the robot shifts away
        g.step(&brain).unwrap();
        assert_eq!(g.status(), Status::Running);

        let mut g = GameState::from_parts(quiet(), at(10, 1), vec![obstacle(Track::One, 10, 1)]).unwrap();
        g.step(&brain).unwrap();
        assert_eq!(g.status(), Status::Collided);
        assert!(g.step(&brain).is_err());
    }

    #[test]
    fn forced_spawn() {
        let config = GameConfig { spawn_prob: 1.0, ..GameConfig::default() };
        let mut g = GameState::from_parts(config, at(4, 2), vec![]).unwrap();
        g.spawn_obstacles();
        let rows: Vec<(Track, i64)> = g.obstacles().iter().map(|o| (o.track, o.row)).collect();
        assert_eq!(rows, vec![(Track::One, 14), (Track::Two, 14)]);
    }

    #[test]
    fn no_spawn_when_prob_zero() {
        let mut g = GameState::from_parts(quiet(), at(4, 2), vec![obstacle(Track::Two, 20, 1)]).unwrap();
        g.spawn_obstacles();
        assert_eq!(g.obstacles().len(), 1);
    }

    #[test]
    fn min_gap_blocks_spawn() {
        let config = GameConfig { spawn_prob: 1.0, ..GameConfig::default() };
        let mut g = GameState::from_parts(config.clone(), at(0, 2), vec![obstacle(Track::One, 10, -1)]).unwrap();
        g.spawn_obstacles();
        assert_eq!(g.obstacles().iter().filter(|o| o.track == Track::One).count(), 1);
        assert_eq!(g.obstacles().iter().filter(|o| o.track == Track::Two).count(), 1);

        // just outside the gap
        let mut g = GameState::from_parts(config, at(0, 2), vec![obstacle(Track::One, 13, -1)]).unwrap();
        g.spawn_obstacles();
        assert_eq!(g.obstacles().iter().filter(|o| o.track == Track::One).count(), 2);
    }

    #[test]
    fn empty_road_wins_in_road_length_ticks() {
        let config = GameConfig { road_length: 25, ..quiet() };
        let r = run_episode(&config, BrainKind::Quantum).unwrap();
        assert_eq!(r.status, Status::Won);
        assert_eq!(r.ticks_elapsed, 25);
        assert_eq!(r.trace.len(), 25);
        assert_eq!(r.collision_tick, None);
    }

    #[test]
    fn timeout() {
        let config = GameConfig { road_length: 25, max_ticks: 10, ..quiet() };
        let r = run_episode(&config, BrainKind::Classical).unwrap();
        assert_eq!(r.status, Status::TimedOut);
        assert_eq!(r.ticks_elapsed, 10);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(GameState::from_parts(quiet(), at(0, 4), vec![]).is_err());
        assert!(GameState::from_parts(quiet(), at(0, 0), vec![]).is_err());
        assert!(GameState::from_parts(quiet(), at(0, 2), vec![obstacle(Track::One, 3, 0)]).is_err());
    }
}
