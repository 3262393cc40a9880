#pragma once

#include "moga/automaton.hpp"
#include "moga/boolean.hpp"
#include "moga/cli.hpp"
#include "moga/closures.hpp"
#include "moga/document.hpp"
#include "moga/gallery.hpp"
#include "moga/matrix.hpp"
#include "moga/monoid.hpp"
#include "moga/scalar.hpp"
#include "moga/turakainen.hpp"
