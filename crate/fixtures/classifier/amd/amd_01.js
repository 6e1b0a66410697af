define(function(require) {
  var util = require('./util');
  return util.extend({}, { name: 'x' });
});
