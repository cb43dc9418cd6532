#ifndef CHRONOSYNTH_H
#define CHRONOSYNTH_H

#include <stddef.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_ARGUMENT = 1,   /* null pointer, unknown option value */
  CS_ERR_PARSE = 2,      /* malformed JSON, spec or move */
  CS_ERR_DOMAIN = 3,     /* input outside an operation's preconditions */
  CS_ERR_RESOURCE = 4,   /* a cap was exceeded; see cs_last_error_progress */
  CS_ERR_UNDECIDED = 5,  /* adjudication cannot settle the play */
  CS_ERR_ILLEGAL_MOVE = 6,
  CS_ERR_IO = 7,
  CS_ERR_INTERNAL = 8
} cs_status;

typedef enum cs_semantics { CS_RC = 0, CS_FV = 1 } cs_semantics;

typedef struct cs_automaton cs_automaton;
typedef struct cs_session cs_session;

typedef struct cs_options {
  size_t signature_cap; /* monoid signatures */
  size_t strategy_cap;  /* strategy checks during enumeration */
  size_t round_cap;     /* steps per simulated play */
  unsigned jobs;        /* enumeration threads */
  unsigned long long seed;
} cs_options;

CS_API const char* cs_version(void);

/* Message and progress counter of the last failed call on this thread. */
CS_API const char* cs_last_error(void);
CS_API size_t cs_last_error_progress(void);

/* Frees strings returned through char** out-parameters. */
CS_API void cs_string_free(char* s);

/* Library defaults, then CHRONOSYNTH_CAP_SIGNATURES, CHRONOSYNTH_CAP_STRATEGIES
   and CHRONOSYNTH_CAP_ROUNDS from the environment. */
CS_API cs_status cs_options_default(cs_options* opt);

CS_API cs_status cs_automaton_from_json(const char* json, cs_automaton** out);
CS_API cs_status cs_automaton_load(const char* path, cs_automaton** out);
CS_API void cs_automaton_free(cs_automaton* a);
CS_API cs_status cs_automaton_to_json(const cs_automaton* a, char** out);

/* Each call writes a JSON document to *out. */
CS_API cs_status cs_solve_discrete(const cs_automaton* a, char** out);
CS_API cs_status cs_definable(const cs_automaton* a, int strongly_causal, char** out);
CS_API cs_status cs_synth(const cs_automaton* a, cs_semantics s, const cs_options* opt,
                          int with_stats, char** out);
/* table_semantics < 0: the plain table of the automaton; otherwise the table
   the arena of that semantics is built from. */
CS_API cs_status cs_monoid(const cs_automaton* a, int table_semantics, const cs_options* opt,
                           int full_table, char** out);
/* JSON dump, or DOT text when dot != 0. */
CS_API cs_status cs_arena(const cs_automaton* a, cs_semantics s, const cs_options* opt, int dot,
                          char** out);
CS_API cs_status cs_jump_example(unsigned rounds, char** out);
CS_API cs_status cs_check_fixtures(const cs_options* opt, char** out);

/* A play against the witness strategy of a realizable spec; the caller is
   player I. O's moves are made eagerly, so a live session always waits for I. */
CS_API cs_status cs_session_new(const cs_automaton* a, cs_semantics s, const cs_options* opt,
                                cs_session** out);
CS_API void cs_session_free(cs_session* s);
/* Current node, time, duration bound and the legal I moves as ready-made
   transcript lines. */
CS_API cs_status cs_session_state(const cs_session* s, char** out);
/* Applies one I transcript line; O lines are ignored. Writes the transcript
   lines produced (I's move and O's answers), newline-terminated. */
CS_API cs_status cs_session_move(cs_session* s, const char* line, char** out);
/* A random adversary plays the rest of the game. */
CS_API cs_status cs_session_autoplay(cs_session* s, unsigned long long seed, char** out);
CS_API cs_status cs_session_transcript(const cs_session* s, char** out);
CS_API cs_status cs_session_adjudicate(const cs_session* s, char** out);
CS_API int cs_session_finished(const cs_session* s);
/* The play continues by repeating its last `steps` steps forever; 0 when no
   such declaration was made. */
CS_API cs_status cs_session_declare_period(cs_session* s, size_t steps);
CS_API size_t cs_session_period(const cs_session* s);

#ifdef __cplusplus
}
#endif

#endif
