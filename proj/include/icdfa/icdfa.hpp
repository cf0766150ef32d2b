#ifndef ICDFA_ICDFA_HPP
#define ICDFA_ICDFA_HPP

#include "icdfa/bigcount.hpp"
#include "icdfa/census.hpp"
#include "icdfa/coding.hpp"
#include "icdfa/counting.hpp"
#include "icdfa/dfa.hpp"
#include "icdfa/enumeration.hpp"
#include "icdfa/icdfa_string.hpp"
#include "icdfa/minimize.hpp"
#include "icdfa/random.hpp"
#include "icdfa/sampling.hpp"

#endif
