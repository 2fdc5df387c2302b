#pragma once

#include <string>

#include "cmv/model/parse.hpp"
#include "cmv/petri/net.hpp"

// Shared nets and documents used across the suites. The nets mirror the
// standard textbook fixtures the toolkit ships: a producer/consumer with
// an unbounded buffer, the four-seasons cycle, and a five-place cycle
// with a choice diamond.
namespace fixtures {

std::string dir();
std::string path(const std::string& relative);

// P1..P5 / T1..T4, M0 = [1 0 0 1 0]; buffer place P3 is unbounded.
cmv::petri::PlaceTransitionNet producer_consumer();

// Four places in a cycle, one token: P-invariant [1,1,1,1].
cmv::petri::PlaceTransitionNet seasons();

// Five places, four transitions, two interleavable branches rejoining:
// M0=[1,0,0,0,0]; T1 forks P2+P4, T4 joins P3+P5 back to P1.
cmv::petri::PlaceTransitionNet cycle_choice();

// Loaded fixture compositions.
cmv::model::ComposedComponent manufacturing_1();
cmv::model::ComposedComponent manufacturing_2();
cmv::model::ComposedComponent field_artillery();
cmv::model::ComposedComponent field_artillery_faulty();
cmv::model::ComposedComponent pingpong();

// Queue component document (inline): extension exercising guards, list
// state and FIFO behavior.
std::string queue_document();

} // namespace fixtures
