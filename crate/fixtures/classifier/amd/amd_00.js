define(['jquery', './grid'], function($, grid) {
  return { draw: function() { grid.render($('#c')); } };
});
