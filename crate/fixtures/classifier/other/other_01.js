(function($) {
  $.fn.highlight = function() {
    return this.css('color', 'red');
  };
})(jQuery);
