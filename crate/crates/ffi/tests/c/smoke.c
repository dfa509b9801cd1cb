#include <stdio.h>
#include <string.h>

#include "pmatroid.h"

static const char *EXAMPLE =
    "{\"matroid\": {\"kind\": \"graphic\", \"nodes\": 3, \"edges\": [[0,1],[2,0],[0,1],[2,1]]},"
    " \"labels\": [\"e\",\"f\",\"g\",\"h\"], \"p\": 2,"
    " \"weights\": [{\"a\":\"0\",\"b\":[\"6\",\"4\"]}, {\"a\":\"2\",\"b\":[\"4\",\"2\"]},"
    "  {\"a\":\"1\",\"b\":[\"2\",\"8\"]}, {\"a\":\"6\",\"b\":[\"4\",\"12\"]}]}";

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    PmInstance *inst = NULL;
    CHECK(pm_instance_parse(EXAMPLE, &inst) == PM_STATUS_OK);

    PmSolution *sol = NULL;
    CHECK(pm_solve(inst, PM_ALGORITHM_PIVOT, &sol) == PM_STATUS_OK);
    size_t regions = 0;
    CHECK(pm_solution_region_count(sol, &regions) == PM_STATUS_OK);
    CHECK(regions == 4);

    const char *pt[] = {"-3/5", "-3/5"};
    char *value = NULL, *basis = NULL;
    CHECK(pm_solution_evaluate(sol, pt, 2, &value, &basis) == PM_STATUS_OK);
    CHECK(strcmp(value, "-48/5") == 0);
    CHECK(strcmp(basis, "e,h") == 0);
    pm_string_free(value);
    pm_string_free(basis);

    PmInterdiction *vit = NULL;
    CHECK(pm_interdict(inst, PM_RANK_DROP_STRICT, &vit) == PM_STATUS_OK);
    const char *q[] = {"2", "2"};
    char *elem = NULL;
    CHECK(pm_interdiction_evaluate(vit, q, 2, &elem, &value) == PM_STATUS_OK);
    CHECK(strcmp(elem, "f") == 0);
    CHECK(strcmp(value, "58") == 0);
    pm_string_free(elem);
    pm_string_free(value);

    PmInstance *bad = NULL;
    CHECK(pm_instance_parse("{", &bad) == PM_STATUS_INPUT);
    CHECK(bad == NULL);
    CHECK(pm_last_error() != NULL);

    pm_interdiction_free(vit);
    pm_solution_free(sol);
    pm_instance_free(inst);
    printf("ok\n");
    return 0;
}
