#ifndef STRATA_KIT_H
#define STRATA_KIT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

typedef struct sk_session sk_session;
typedef struct sk_tower sk_tower;
typedef struct sk_element sk_element;

/* status codes, equal to the CLI exit codes */
enum sk_status {
  SK_OK = 0,
  SK_ERR_SCHEMA = 1,
  SK_ERR_DOMAIN = 2,
  SK_ERR_PRECISION = 3
};

SK_API const char* sk_version(void);
SK_API const char* sk_status_name(int status);
/* message of the last failed call on this thread */
SK_API const char* sk_last_error(void);
/* strings returned through char** out parameters */
SK_API void sk_string_free(char* s);

SK_API int sk_session_create(long long prec, unsigned long long seed, sk_session** out);
SK_API void sk_session_destroy(sk_session* s);
/* runs a command on a JSON document; *output is the result or {"error": ...} */
SK_API int sk_session_run(sk_session* s, const char* command, const char* input_json, char** output);
/* lattice dumps written by verify are collected while enabled */
SK_API int sk_session_set_dump(sk_session* s, int enabled);
SK_API int sk_session_take_dump(sk_session* s, char** output);

SK_API int sk_command_count(void);
SK_API const char* sk_command_name(int index);
SK_API int sk_command_schema(const char* command, char** output);

SK_API int sk_tower_create(const char* spec_json, sk_tower** out);
SK_API void sk_tower_destroy(sk_tower* t);
SK_API int sk_tower_degree(const sk_tower* t, int* degree);
SK_API int sk_tower_ramification(const sk_tower* t, int* e);

SK_API int sk_element_parse(const sk_tower* t, const char* json, long long prec, sk_element** out);
SK_API void sk_element_destroy(sk_element* x);
SK_API int sk_element_valuation(const sk_element* x, long long* v);
SK_API int sk_element_sr(const sk_element* x, sk_element** out);
SK_API int sk_element_is_minimal(const sk_element* x, int* minimal);
SK_API int sk_element_to_json(const sk_element* x, char** output);

#ifdef __cplusplus
}
#endif

#endif
