#include <stdio.h>
#include <string.h>

#include "kecs.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,   \
                    kecs_last_error());                              \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    KecsGraph *g = NULL;
    CHECK(kecs_graph_named("petersen", &g) == KECS_STATUS_OK);
    CHECK(kecs_graph_edge_count(g) == 15);

    KecsSolution *s = NULL;
    CHECK(kecs_solve(g, 2, KECS_METHOD_AUTO, 0, &s) == KECS_STATUS_OK);
    CHECK(kecs_solution_nu(s) == 9);

    uint32_t colors[15];
    CHECK(kecs_solution_colors(s, colors, 15) == KECS_STATUS_OK);
    size_t colored = 0;
    for (size_t e = 0; e < 15; e++) colored += colors[e] != 0;
    CHECK(colored == 9);

    char *cert = NULL;
    CHECK(kecs_solution_certificate(s, &cert) == KECS_STATUS_OK);
    bool valid = false;
    CHECK(kecs_verify_certificate(cert, &valid) == KECS_STATUS_OK && valid);
    kecs_string_free(cert);

    size_t values[16];
    size_t len = 0;
    CHECK(kecs_spectrum(g, 0, values, 16, &len) == KECS_STATUS_OK);
    CHECK(len == 5 && values[2] == 9 && values[3] == 13);

    CHECK(kecs_solve(g, 2, KECS_METHOD_FLOW, 0, &s) == KECS_STATUS_NOT_BIPARTITE);
    CHECK(strstr(kecs_last_error(), "bipartite") != NULL);

    kecs_solution_free(s);
    kecs_graph_free(g);
    puts("ok");
    return 0;
}
