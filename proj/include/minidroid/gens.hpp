#pragma once

#include <string>
#include <vector>

#include "minidroid/errors.hpp"
#include "minidroid/rng.hpp"

namespace minidroid {

// Named value generators used for randomized task parameters and for
// seed-derived decoy content. Each draw is a pure function of the Rng state.
namespace gens {

inline std::string random_suffix(Rng& rng, int n) {
  static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (int i = 0; i < n; ++i) s += alphabet[rng.uniform_int(26)];
  return s;
}

inline std::string pick(Rng& rng, const std::vector<std::string>& v) {
  return v[rng.uniform_int(v.size())];
}

inline std::string filename(Rng& rng) {
  static const std::vector<std::string> stems = {
      "presentation", "meeting", "memo",   "interview",
      "lecture",      "standup", "briefing", "voicemail"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4) + ".m4a";
}

inline std::string note_title(Rng& rng) {
  static const std::vector<std::string> stems = {
      "groceries", "ideas",  "todo",    "draft",
      "journal",   "recipe", "packing", "budget"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4);
}

inline std::string text_file(Rng& rng) {
  static const std::vector<std::string> stems = {
      "report", "invoice", "notes", "summary", "plan", "outline"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4) + ".txt";
}

inline std::string person_name(Rng& rng) {
  static const std::vector<std::string> first = {
      "Alice", "Bruno", "Carla", "Derek", "Elena",
      "Felix", "Grace", "Henry", "Irene", "Jonas"};
  static const std::vector<std::string> last = {
      "Meyer", "Okoye", "Park", "Quinn", "Ruiz",
      "Silva", "Tanaka", "Udo",  "Vogel", "Weiss"};
  return pick(rng, first) + " " + pick(rng, last);
}

inline std::string phone(Rng& rng) {
  std::string s = "555";
  for (int i = 0; i < 7; ++i) s += static_cast<char>('0' + rng.uniform_int(10));
  return s;
}

inline std::string device_name(Rng& rng) {
  static const std::vector<std::string> adj = {"amber", "cobalt", "ivory",
                                               "onyx", "scarlet", "teal"};
  static const std::vector<std::string> noun = {"falcon", "otter", "lynx",
                                                "heron", "badger", "finch"};
  return pick(rng, adj) + "-" + pick(rng, noun);
}

inline std::string message_text(Rng& rng) {
  static const std::vector<std::string> msgs = {
      "running late",     "see you at noon", "call me back",
      "meeting moved",    "on my way",       "thanks again",
      "lunch tomorrow",   "sounds good"};
  return pick(rng, msgs);
}

inline std::string size_kb(Rng& rng) {
  return std::to_string(8 + rng.uniform_int(240));
}

inline std::string coin(Rng& rng) {
  return rng.uniform_int(2) ? "true" : "false";
}

// Decoy pools are disjoint from the parameter pools above, so randomized
// filler content can never collide with a task's target values.
inline std::string filename_decoy(Rng& rng) {
  static const std::vector<std::string> stems = {"draft", "session", "take",
                                                 "clip", "audio", "sample"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4) + ".m4a";
}

inline std::string note_title_decoy(Rng& rng) {
  static const std::vector<std::string> stems = {"scratch", "links", "quotes",
                                                 "errands", "books", "films"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4);
}

inline std::string text_file_decoy(Rng& rng) {
  static const std::vector<std::string> stems = {"backup", "log",   "export",
                                                 "chart",  "sheet", "slides"};
  return pick(rng, stems) + "_" + random_suffix(rng, 4) + ".txt";
}

inline std::string person_name_decoy(Rng& rng) {
  static const std::vector<std::string> first = {"Kara", "Liam", "Mona",
                                                 "Nico", "Omar", "Pia"};
  static const std::vector<std::string> last = {"Abe",   "Bloom", "Cole",
                                                "Drake", "Egan",  "Frost"};
  return pick(rng, first) + " " + pick(rng, last);
}

inline std::string message_text_decoy(Rng& rng) {
  static const std::vector<std::string> msgs = {
      "happy birthday", "got the tickets", "send the address",
      "package arrived", "great news",     "check your email"};
  return pick(rng, msgs);
}

}  // namespace gens

// Dispatch by generator name. Unknown names are definition bugs.
inline std::string generate_value(const std::string& gen_name, Rng& rng) {
  if (gen_name == "filename") return gens::filename(rng);
  if (gen_name == "note_title") return gens::note_title(rng);
  if (gen_name == "text_file") return gens::text_file(rng);
  if (gen_name == "person_name") return gens::person_name(rng);
  if (gen_name == "phone") return gens::phone(rng);
  if (gen_name == "device_name") return gens::device_name(rng);
  if (gen_name == "message_text") return gens::message_text(rng);
  if (gen_name == "size_kb") return gens::size_kb(rng);
  if (gen_name == "coin") return gens::coin(rng);
  if (gen_name == "filename_decoy") return gens::filename_decoy(rng);
  if (gen_name == "note_title_decoy") return gens::note_title_decoy(rng);
  if (gen_name == "text_file_decoy") return gens::text_file_decoy(rng);
  if (gen_name == "person_name_decoy") return gens::person_name_decoy(rng);
  if (gen_name == "message_text_decoy") return gens::message_text_decoy(rng);
  throw ConfigError("unknown value generator: " + gen_name);
}

}  // namespace minidroid
